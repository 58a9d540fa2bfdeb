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

// lprc: command-line front end for the codec.  Subcommands:
//   encode  image (PGM/PPM) -> container
//   decode  container -> image
//   verify  check a container against the original image
//   stats   size/rate breakdown of a container
//   bench   encode+decode a corpus, emitting one CSV row per image

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lpr/container.h"

namespace {

namespace fs = std::filesystem;

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::RuntimeError("cannot open " + path, 1);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return bytes;
}

void write_file(const std::string& path, std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CLI::RuntimeError("cannot write " + path, 1);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            std::streamsize(bytes.size()));
  if (!out) throw CLI::RuntimeError("short write to " + path, 1);
}

int max_abs_error(const lpr::ImagePlane& a, const lpr::ImagePlane& b) {
  if (!a.same_shape(b))
    throw CLI::RuntimeError("image shapes differ; cannot compare", 1);
  int worst = 0;
  for (size_t i = 0; i < a.samples.size(); ++i)
    worst = std::max(worst, std::abs(int(a.samples[i]) - int(b.samples[i])));
  return worst;
}

double elapsed_ms(std::chrono::steady_clock::time_point from,
                  std::chrono::steady_clock::time_point to) {
  return std::chrono::duration<double, std::milli>(to - from).count();
}

// Options shared by encode and bench.
struct EncodeFlags {
  int tau = 0;
  std::string base;  // "", "null", or "downsample"
  int factor = 4;
  uint32_t patch_size = 64;
  int kernel = 7;
  int par_index = 3;
  std::string tensor_path;
  bool no_interval_reduction = false;
  int threads = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tau", tau, "reconstruction error bound (0 = lossless)")
        ->check(CLI::Range(0, 255));
    cmd->add_option("--base", base, "base layer codec: null or downsample")
        ->check(CLI::IsMember({"null", "downsample"}));
    cmd->add_option("--factor", factor, "downsampling factor for the base")
        ->check(CLI::IsMember({2, 4, 8}));
    cmd->add_option("--patch-size", patch_size, "independent patch size")
        ->check(CLI::Range(1, 65535));
    cmd->add_option("-k,--kernel", kernel, "context kernel size (odd)");
    cmd->add_option("-j,--parallel-index", par_index,
                    "wavefront parallelism index");
    cmd->add_option("--param-tensor", tensor_path,
                    "per-pixel mixture parameter tensor file");
    cmd->add_flag("--no-interval-reduction", no_interval_reduction,
                  "code over the full residual range instead of the "
                  "image's own interval");
    cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
  }

  // The tensor (when given) must outlive the returned config.
  lpr::EncodeConfig to_config(const std::optional<lpr::ParamTensor>& tensor) const {
    lpr::EncodeConfig cfg;
    cfg.tau = lpr::Tau(tau);
    if (base == "null")
      cfg.base = lpr::BaseCodecConfig{lpr::BaseCodecId::kNull, factor};
    else if (base == "downsample")
      cfg.base = lpr::BaseCodecConfig{lpr::BaseCodecId::kDownsample, factor};
    cfg.patch_size = patch_size;
    cfg.context = lpr::ContextModelSpec(kernel, par_index);
    if (tensor) {
      cfg.source = lpr::ParamSource::kTensor;
      cfg.tensor = &*tensor;
    }
    cfg.interval_reduction = !no_interval_reduction;
    cfg.threads = threads;
    return cfg;
  }

  std::optional<lpr::ParamTensor> load_tensor() const {
    if (tensor_path.empty()) return std::nullopt;
    return lpr::load_param_tensor(read_file(tensor_path));
  }
};

int run_encode(const std::string& input, const std::string& output,
               const EncodeFlags& flags) {
  const lpr::ImagePlane image = lpr::load_image(read_file(input));
  const std::optional<lpr::ParamTensor> tensor = flags.load_tensor();
  const std::vector<uint8_t> coded =
      lpr::encode_file(image, flags.to_config(tensor));
  write_file(output, coded);
  const lpr::RateReport report = lpr::stats(coded);
  std::printf("%s: %ux%ux%u tau=%d -> %zu bytes (%.4f bpsp)\n", output.c_str(),
              report.width, report.height, report.channels, report.tau,
              report.total_bytes, report.bpsp_total);
  return 0;
}

int run_decode(const std::string& input, const std::string& output,
               const std::string& tensor_path, int threads) {
  std::optional<lpr::ParamTensor> tensor;
  if (!tensor_path.empty())
    tensor = lpr::load_param_tensor(read_file(tensor_path));
  lpr::DecodeOptions options;
  options.tensor = tensor ? &*tensor : nullptr;
  options.threads = threads;
  const lpr::ImagePlane image = lpr::decode_file(read_file(input), options);
  write_file(output, lpr::save_image(image));
  std::printf("%s: %ux%ux%u\n", output.c_str(), image.width, image.height,
              image.channels);
  return 0;
}

int run_verify(const std::string& original_path, const std::string& coded_path,
               const std::string& tensor_path, int threads) {
  const lpr::ImagePlane original = lpr::load_image(read_file(original_path));
  const std::vector<uint8_t> coded = read_file(coded_path);
  std::optional<lpr::ParamTensor> tensor;
  if (!tensor_path.empty())
    tensor = lpr::load_param_tensor(read_file(tensor_path));
  lpr::DecodeOptions options;
  options.tensor = tensor ? &*tensor : nullptr;
  options.threads = threads;
  const lpr::ImagePlane decoded = lpr::decode_file(coded, options);
  const int tolerance = lpr::stats(coded).tau;
  const int worst = max_abs_error(original, decoded);
  const bool ok = worst <= tolerance;
  std::printf("max_error=%d tolerance=%d: %s\n", worst, tolerance,
              ok ? "OK" : "FAIL");
  return ok ? 0 : 1;
}

int run_stats(const std::string& path) {
  const lpr::RateReport r = lpr::stats(read_file(path));
  std::printf("dimensions      %ux%ux%u\n", r.width, r.height, r.channels);
  std::printf("tau             %d\n", r.tau);
  std::printf("patches         %zu\n", r.patches);
  std::printf("total_bytes     %zu\n", r.total_bytes);
  std::printf("base_bytes      %zu\n", r.base_bytes);
  std::printf("residual_bytes  %zu\n", r.residual_bytes);
  std::printf("bpsp_total      %.6f\n", r.bpsp_total);
  std::printf("bpsp_base       %.6f\n", r.bpsp_base);
  std::printf("bpsp_residual   %.6f\n", r.bpsp_residual);
  return 0;
}

std::vector<std::string> collect_images(const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const std::string& input : inputs) {
    if (fs::is_directory(input)) {
      for (const fs::directory_entry& entry : fs::directory_iterator(input)) {
        const std::string ext = entry.path().extension().string();
        if (entry.is_regular_file() && (ext == ".pgm" || ext == ".ppm"))
          files.push_back(entry.path().string());
      }
    } else {
      files.push_back(input);
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

int run_bench(const std::vector<std::string>& inputs, const std::string& csv,
              const EncodeFlags& flags) {
  const std::vector<std::string> files = collect_images(inputs);
  if (files.empty()) throw CLI::RuntimeError("no .pgm/.ppm inputs found", 1);
  const std::optional<lpr::ParamTensor> tensor = flags.load_tensor();

  std::FILE* out = stdout;
  if (!csv.empty()) {
    out = std::fopen(csv.c_str(), "w");
    if (!out) throw CLI::RuntimeError("cannot write " + csv, 1);
  }
  std::fprintf(out,
               "path,H,W,tau,bpsp_total,bpsp_base,bpsp_residual,max_error,"
               "encode_ms,decode_ms\n");

  int failures = 0;
  for (const std::string& path : files) {
    const lpr::ImagePlane image = lpr::load_image(read_file(path));
    const lpr::EncodeConfig cfg = flags.to_config(tensor);

    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<uint8_t> coded = lpr::encode_file(image, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    lpr::DecodeOptions options;
    options.tensor = cfg.tensor;
    options.threads = flags.threads;
    const lpr::ImagePlane decoded = lpr::decode_file(coded, options);
    const auto t2 = std::chrono::steady_clock::now();

    const lpr::RateReport r = lpr::stats(coded);
    const int worst = max_abs_error(image, decoded);
    if (worst > flags.tau) ++failures;
    std::fprintf(out, "%s,%u,%u,%d,%.6f,%.6f,%.6f,%d,%.3f,%.3f\n",
                 path.c_str(), r.height, r.width, r.tau, r.bpsp_total,
                 r.bpsp_base, r.bpsp_residual, worst, elapsed_ms(t0, t1),
                 elapsed_ms(t1, t2));
  }
  if (out != stdout) std::fclose(out);
  if (failures != 0) {
    std::fprintf(stderr, "%d image(s) exceeded the error bound\n", failures);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lossless / near-lossless image codec"};
  app.require_subcommand(1);

  // encode
  auto* encode = app.add_subcommand("encode", "compress a PGM/PPM image");
  std::string enc_in, enc_out;
  EncodeFlags enc_flags;
  encode->add_option("input", enc_in, "source image (PGM or PPM)")->required();
  encode->add_option("output", enc_out, "coded container path")->required();
  enc_flags.attach(encode);

  // decode
  auto* decode = app.add_subcommand("decode", "decompress a container");
  std::string dec_in, dec_out, dec_tensor;
  int dec_threads = 0;
  decode->add_option("input", dec_in, "coded container path")->required();
  decode->add_option("output", dec_out, "output image (PGM or PPM)")
      ->required();
  decode->add_option("--param-tensor", dec_tensor,
                     "parameter tensor used at encode time");
  decode->add_option("--threads", dec_threads, "worker threads (0 = all cores)");

  // verify
  auto* verify = app.add_subcommand(
      "verify", "decode and check against the original image");
  std::string ver_orig, ver_coded, ver_tensor;
  int ver_threads = 0;
  verify->add_option("original", ver_orig, "original image")->required();
  verify->add_option("coded", ver_coded, "coded container path")->required();
  verify->add_option("--param-tensor", ver_tensor,
                     "parameter tensor used at encode time");
  verify->add_option("--threads", ver_threads, "worker threads (0 = all cores)");

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "rate breakdown of a container");
  std::string stats_in;
  stats_cmd->add_option("input", stats_in, "coded container path")->required();

  // bench
  auto* bench = app.add_subcommand(
      "bench", "encode+decode a corpus and emit per-image CSV rows");
  std::vector<std::string> bench_inputs;
  std::string bench_csv;
  EncodeFlags bench_flags;
  bench->add_option("inputs", bench_inputs, "images or directories of images")
      ->required();
  bench->add_option("--csv", bench_csv, "write rows to this file (default stdout)");
  bench_flags.attach(bench);

  CLI11_PARSE(app, argc, argv);

  try {
    if (encode->parsed()) return run_encode(enc_in, enc_out, enc_flags);
    if (decode->parsed())
      return run_decode(dec_in, dec_out, dec_tensor, dec_threads);
    if (verify->parsed())
      return run_verify(ver_orig, ver_coded, ver_tensor, ver_threads);
    if (stats_cmd->parsed()) return run_stats(stats_in);
    if (bench->parsed()) return run_bench(bench_inputs, bench_csv, bench_flags);
  } catch (const CLI::RuntimeError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.get_exit_code();
  } catch (const lpr::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
