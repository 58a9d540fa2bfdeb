// Copyright (c) the LPR Codec Project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lpr/container.h"

#include <array>
#include <cstring>
#include <numeric>

#include "lpr/quantizer.h"

namespace lpr {

uint32_t crc32_update(uint32_t crc, std::span<const uint8_t> bytes) {
  static const std::array<uint32_t, 256> table = [] {
    std::array<uint32_t, 256> t{};
    for (uint32_t i = 0; i < 256; ++i) {
      uint32_t c = i;
      for (int k = 0; k < 8; ++k)
        c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  crc = ~crc;
  for (uint8_t b : bytes) crc = (crc >> 8) ^ table[(crc ^ b) & 0xFFu];
  return ~crc;
}

int full_range_bound(Tau tau) {
  if (tau.lossless()) return 255;
  return quantize_residual(255, tau);
}

std::vector<uint8_t> serialize_header(const ContainerHeader& header) {
  std::vector<uint8_t> out;
  out.reserve(kFixedHeaderBytes + 4 * header.segment_lengths.size());
  for (char c : kContainerMagic) out.push_back(uint8_t(c));
  put_u8(out, kContainerVersion);
  put_u32le(out, header.height);
  put_u32le(out, header.width);
  put_u8(out, header.channels);
  put_u8(out, header.tau);
  put_u8(out, uint8_t(header.base.id));
  put_u8(out, uint8_t(header.base.factor));
  put_u16le(out, header.patch_size);
  put_u8(out, header.kernel);
  put_u8(out, header.par_index);
  put_u8(out, header.mixtures);
  put_u8(out, uint8_t(header.source));
  put_i16le(out, header.r_min);
  put_i16le(out, header.r_max);
  put_u32le(out, header.base_payload_len);
  for (uint32_t len : header.segment_lengths) put_u32le(out, len);
  return out;
}

ContainerHeader parse_header(ByteReader& reader) {
  char magic[4];
  for (char& c : magic) c = char(reader.u8());
  if (std::memcmp(magic, kContainerMagic, 4) != 0)
    fail(ErrorCode::kBadMagic, "not a coded image container");
  const uint8_t version = reader.u8();
  if (version != kContainerVersion)
    fail(ErrorCode::kBadVersion, "unsupported container version");

  ContainerHeader h;
  h.height = reader.u32le();
  h.width = reader.u32le();
  h.channels = reader.u8();
  h.tau = reader.u8();
  h.base.id = BaseCodecId(reader.u8());
  h.base.factor = reader.u8();
  h.patch_size = reader.u16le();
  h.kernel = reader.u8();
  h.par_index = reader.u8();
  h.mixtures = reader.u8();
  const uint8_t source = reader.u8();
  h.r_min = reader.i16le();
  h.r_max = reader.i16le();
  h.base_payload_len = reader.u32le();

  if (h.height == 0 || h.width == 0)
    fail(ErrorCode::kMalformedHeader, "empty image dimensions");
  if (h.channels != 1 && h.channels != 3)
    fail(ErrorCode::kMalformedHeader, "channel count must be 1 or 3");
  if (h.base.id != BaseCodecId::kNull && h.base.id != BaseCodecId::kDownsample)
    fail(ErrorCode::kUnknownCodec, "unknown base codec id");
  if (h.base.id == BaseCodecId::kDownsample && h.base.factor != 2 &&
      h.base.factor != 4 && h.base.factor != 8)
    fail(ErrorCode::kMalformedHeader, "invalid downsampling factor");
  if (h.kernel < 3 || h.kernel % 2 == 0)
    fail(ErrorCode::kMalformedHeader, "context kernel must be odd and >= 3");
  if (h.par_index < 1 || int(h.par_index) > (int(h.kernel) + 3) / 2)
    fail(ErrorCode::kMalformedHeader, "parallelism index out of range");
  if (h.patch_size == 0 || uint32_t(h.patch_size) <= uint32_t((h.kernel + 1) / 2))
    fail(ErrorCode::kMalformedHeader, "patch size out of range for kernel");
  if (h.mixtures < 1 || h.mixtures > kMaxMixtures)
    fail(ErrorCode::kMalformedHeader, "mixture count out of range");
  if (source > uint8_t(ParamSource::kTensor))
    fail(ErrorCode::kMalformedHeader, "unknown parameter source");
  h.source = ParamSource(source);
  if (h.source == ParamSource::kEstimator && h.mixtures != 1)
    fail(ErrorCode::kMalformedHeader,
         "estimator-coded files always use one mixture component");
  if (h.r_min > h.r_max)
    fail(ErrorCode::kMalformedHeader, "inverted residual interval");

  const size_t n = tile(h.height, h.width, h.patch_size).size();
  h.segment_lengths.resize(n);
  for (uint32_t& len : h.segment_lengths) len = reader.u32le();
  return h;
}

namespace {

ResidualCodingConfig coding_config(const ContainerHeader& h,
                                   const ParamTensor* tensor, int threads) {
  ResidualCodingConfig rc;
  rc.tau = Tau(h.tau);
  rc.support = interval_support({h.r_min, h.r_max}, h.tau);
  rc.context = ContextModelSpec(h.kernel, h.par_index);
  rc.patch_size = h.patch_size;
  rc.source = h.source;
  rc.tensor = tensor;
  rc.threads = threads;
  return rc;
}

}  // namespace

std::vector<uint8_t> encode_file(const ImagePlane& image,
                                 const EncodeConfig& config) {
  if (image.height == 0 || image.width == 0)
    fail(ErrorCode::kBadConfig, "cannot encode an empty image");
  if (image.channels != 1 && image.channels != 3)
    fail(ErrorCode::kBadConfig, "encoder supports 1 or 3 channels");
  if (config.patch_size == 0 || config.patch_size > 0xFFFF)
    fail(ErrorCode::kBadConfig, "patch size out of range");

  const BaseCodecConfig base =
      config.base.value_or(config.tau.lossless()
                               ? BaseCodecConfig{BaseCodecId::kNull, 4}
                               : BaseCodecConfig{BaseCodecId::kDownsample, 4});
  const BaseEncodeResult base_result = base_encode(image, base);

  const ResidualGrid residual = compute_residual(image, base_result.lossy);
  const ResidualGrid coded = quantize_grid(residual, config.tau);

  ResidualInterval interval;
  if (config.interval_reduction) {
    interval = residual_interval(coded);
  } else {
    const int bound = full_range_bound(config.tau);
    interval = {-bound, bound};
  }

  ContainerHeader header;
  header.height = image.height;
  header.width = image.width;
  header.channels = uint8_t(image.channels);
  header.tau = uint8_t(config.tau.value);
  header.base = base;
  header.patch_size = uint16_t(config.patch_size);
  header.kernel = uint8_t(config.context.kernel);
  header.par_index = uint8_t(config.context.par_index);
  header.source = config.source;
  header.r_min = int16_t(interval.min);
  header.r_max = int16_t(interval.max);
  header.base_payload_len = uint32_t(base_result.payload.size());

  ResidualCodingConfig rc = coding_config(header, config.tensor,
                                          config.threads);
  header.mixtures = uint8_t(rc.mixtures());

  const std::vector<std::vector<uint8_t>> segments =
      encode_residual_layer(coded, rc);
  header.segment_lengths.resize(segments.size());
  for (size_t i = 0; i < segments.size(); ++i)
    header.segment_lengths[i] = uint32_t(segments[i].size());

  const ImagePlane recon = reconstruct(base_result.lossy, coded);

  std::vector<uint8_t> out = serialize_header(header);
  out.insert(out.end(), base_result.payload.begin(), base_result.payload.end());
  for (const std::vector<uint8_t>& seg : segments)
    out.insert(out.end(), seg.begin(), seg.end());
  put_u32le(out, crc32(recon.samples));
  return out;
}

ImagePlane decode_file(std::span<const uint8_t> bytes,
                       const DecodeOptions& options) {
  ByteReader reader(bytes);
  const ContainerHeader header = parse_header(reader);

  const std::span<const uint8_t> base_payload =
      reader.take(header.base_payload_len);
  std::vector<std::vector<uint8_t>> segments(header.patches());
  for (size_t i = 0; i < segments.size(); ++i) {
    const std::span<const uint8_t> seg = reader.take(header.segment_lengths[i]);
    segments[i].assign(seg.begin(), seg.end());
  }
  const uint32_t stored_crc = reader.u32le();
  if (reader.remaining() != 0)
    fail(ErrorCode::kPayloadLength, "trailing bytes after container");

  if (header.source == ParamSource::kTensor) {
    if (options.tensor == nullptr)
      fail(ErrorCode::kBadParamTensor,
           "this file needs its parameter tensor to decode");
    if (options.tensor->mixtures != int(header.mixtures))
      fail(ErrorCode::kBadParamTensor,
           "parameter tensor mixture count does not match the file");
  }

  const ImagePlane lossy = base_decode(base_payload, header.base,
                                       header.height, header.width,
                                       header.channels);
  const ResidualCodingConfig rc =
      coding_config(header, options.tensor, options.threads);
  const ResidualGrid coded = decode_residual_layer(
      segments, header.height, header.width, header.channels, rc);

  ImagePlane recon = reconstruct(lossy, coded);
  if (crc32(recon.samples) != stored_crc)
    fail(ErrorCode::kChecksumMismatch,
         "reconstruction does not match the encoder's checksum");
  return recon;
}

RateReport stats(std::span<const uint8_t> bytes) {
  ByteReader reader(bytes);
  const ContainerHeader header = parse_header(reader);

  RateReport report;
  report.height = header.height;
  report.width = header.width;
  report.channels = header.channels;
  report.tau = header.tau;
  report.patches = header.patches();
  report.total_bytes = bytes.size();

  const size_t segments_total =
      std::accumulate(header.segment_lengths.begin(),
                      header.segment_lengths.end(), size_t{0});
  report.base_bytes = kFixedHeaderBytes + 4 * header.patches() +
                      header.base_payload_len;
  report.residual_bytes = segments_total + 4;
  if (report.base_bytes + report.residual_bytes != report.total_bytes)
    fail(ErrorCode::kPayloadLength,
         "container length does not match its tables");

  const uint64_t subpixels =
      uint64_t(header.height) * header.width * header.channels;
  report.bpsp_total = compute_bpsp(report.total_bytes, subpixels);
  report.bpsp_base = compute_bpsp(report.base_bytes, subpixels);
  report.bpsp_residual = compute_bpsp(report.residual_bytes, subpixels);
  return report;
}

}  // namespace lpr
