// Command line front end: synthetic corruption, detection, restoration,
// quality measurement, and the benchmark grid.
//
// Exit codes: 0 success, 1 usage/config error, 2 I/O error, 3 numerical
// failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "saltpepper/amf.hpp"
#include "saltpepper/bench.hpp"
#include "saltpepper/errors.hpp"
#include "saltpepper/metrics.hpp"
#include "saltpepper/noise.hpp"
#include "saltpepper/restore.hpp"

namespace sp = saltpepper;

namespace {

constexpr const char* kMethodNames[] = {"relax", "newton_minres", "cg_fr", "cg_pr", "cg_hs"};

std::string fmt(double v, const char* f = "%.4f") {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

int run_corrupt(const std::string& in, const std::string& out, double p, double q,
                std::optional<double> ratio, std::uint64_t seed, double s_min, double s_max,
                const std::string& mask_out) {
  sp::NoiseSpec spec;
  if (ratio) {
    spec.p = *ratio / 2.0;
    spec.q = *ratio / 2.0;
  } else {
    spec.p = p;
    spec.q = q;
  }
  spec.s_min = s_min;
  spec.s_max = s_max;
  spec.seed = seed;
  spec.validate();

  const sp::GrayImage img = sp::load_pgm(in);
  auto [noisy, mask] = sp::corrupt(img, spec);
  sp::save_pgm(noisy, out);
  if (!mask_out.empty()) sp::save_mask(mask, mask_out);
  std::cout << "corrupted=" << out << " noisy_pixels=" << mask.count()
            << " ratio=" << fmt(sp::noise_ratio(mask), "%.6f") << " seed=" << seed << "\n";
  return 0;
}

int run_detect(const std::string& in, int w_max, double s_min, double s_max,
               const std::string& mask_out, const std::string& u0_out) {
  const sp::GrayImage img = sp::load_pgm(in);
  sp::AmfConfig cfg;
  cfg.w_max = w_max;
  cfg.s_min = s_min;
  cfg.s_max = s_max;
  auto [mask, u0] = sp::adaptive_median(img, cfg);
  if (!mask_out.empty()) sp::save_mask(mask, mask_out);
  if (!u0_out.empty()) sp::save_pgm(u0, u0_out);
  std::cout << "candidates=" << mask.count() << " ratio=" << fmt(sp::noise_ratio(mask), "%.6f")
            << " w_max=" << w_max << "\n";
  return 0;
}

int run_restore(const std::string& in, const std::string& out, const std::string& method_name,
                int w_max, double alpha_min, double rel_u_tol, double rel_f_tol,
                std::size_t ite_max, double minres_tol, const std::string& ref_path) {
  const sp::GrayImage observed = sp::load_pgm(in);
  sp::AmfConfig amf_cfg;
  amf_cfg.w_max = w_max;
  auto [mask, u0] = sp::adaptive_median(observed, amf_cfg);

  const sp::Method method = sp::method_from_string(method_name);
  sp::ContinuationSchedule schedule;
  schedule.alpha_min = alpha_min;
  sp::StopCriteria stop;
  stop.rel_u_tol = rel_u_tol;
  stop.rel_f_tol = rel_f_tol;
  stop.ite_max = ite_max;
  sp::MinresConfig minres_cfg;
  minres_cfg.tol = minres_tol;

  auto [restored, report] = sp::restore(observed, mask, u0, method, schedule, stop, minres_cfg);
  sp::save_pgm(restored, out);

  std::cout << "method=" << sp::to_string(report.method) << " noisy=" << mask.count()
            << " stages=" << report.outer_stages.size() << " iters=" << report.total_iterations
            << " time_s=" << fmt(report.elapsed_seconds) << " stop="
            << sp::to_string(report.stop_reason);
  if (!ref_path.empty()) {
    const sp::GrayImage ref = sp::load_pgm(ref_path);
    // Both the real-valued result and what the written 8-bit file holds.
    std::cout << " psnr_real=" << fmt(sp::psnr(ref, restored))
              << " psnr_u8=" << fmt(sp::psnr(ref, sp::quantized(restored)));
  }
  std::cout << "\n";
  return 0;
}

int run_psnr(const std::string& ref_path, const std::string& test_path) {
  const sp::GrayImage ref = sp::load_pgm(ref_path);
  const sp::GrayImage test = sp::load_pgm(test_path);
  const sp::QualityReport q = sp::quality(ref, test);
  std::cout << "mse=" << fmt(q.mse, "%.6f") << " psnr_db=" << fmt(q.psnr_db) << "\n";
  return 0;
}

int run_bench(sp::ExperimentConfig cfg, const std::vector<std::string>& method_names,
              const std::string& out_csv) {
  cfg.methods.clear();
  for (const auto& name : method_names) cfg.methods.push_back(sp::method_from_string(name));
  const std::vector<sp::BenchRow> rows = sp::run_benchmark(cfg);
  if (out_csv.empty()) {
    sp::write_csv(rows, std::cout);
  } else {
    std::ofstream os(out_csv, std::ios::trunc);
    if (!os) throw sp::IoError(out_csv + ": cannot open for writing");
    sp::write_csv(rows, os);
    std::cout << "wrote " << rows.size() << " rows to " << out_csv << "\n";
  }
  for (const auto& row : rows)
    if (row.status != "ok") throw sp::NumericalError("benchmark cell failed: " + row.status);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-phase salt-and-pepper image restoration"};
  app.require_subcommand(1);

  // corrupt
  auto* corrupt_cmd = app.add_subcommand("corrupt", "Add seeded salt-and-pepper noise");
  std::string in, out, mask_out, u0_out, ref_path, method_name = "relax", out_csv;
  double p = 0.0, q = 0.0, s_min = 0.0, s_max = 255.0;
  std::optional<double> ratio;
  std::uint64_t seed = 0;
  corrupt_cmd->add_option("input", in, "input PGM")->required();
  corrupt_cmd->add_option("output", out, "output PGM")->required();
  corrupt_cmd->add_option("--p", p, "pepper probability");
  corrupt_cmd->add_option("--q", q, "salt probability");
  corrupt_cmd->add_option("--ratio", ratio, "total noise ratio, split evenly (overrides --p/--q)");
  corrupt_cmd->add_option("--seed", seed, "random seed");
  corrupt_cmd->add_option("--s-min", s_min, "pepper intensity");
  corrupt_cmd->add_option("--s-max", s_max, "salt intensity");
  corrupt_cmd->add_option("--mask", mask_out, "write ground-truth mask (PBM P4 + .txt sidecar)");

  // detect
  auto* detect_cmd = app.add_subcommand("detect", "Adaptive median noise detection");
  int w_max = 39;
  detect_cmd->add_option("input", in, "input PGM")->required();
  detect_cmd->add_option("--w-max", w_max, "maximum window size (odd)");
  detect_cmd->add_option("--s-min", s_min, "pepper intensity");
  detect_cmd->add_option("--s-max", s_max, "salt intensity");
  detect_cmd->add_option("--mask", mask_out, "write candidate mask (PBM P4 + .txt sidecar)");
  detect_cmd->add_option("--u0", u0_out, "write the median-replaced initial guess (PGM)");

  // restore
  auto* restore_cmd = app.add_subcommand("restore", "Detect and restore noisy pixels");
  double alpha_min = 1.0, rel_u_tol = 1e-4, rel_f_tol = 1e-4, minres_tol = 1e-8;
  std::size_t ite_max = 500;
  restore_cmd->add_option("input", in, "noisy PGM")->required();
  restore_cmd->add_option("output", out, "restored PGM")->required();
  restore_cmd->add_option("--method", method_name, "solver")
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(kMethodNames), std::end(kMethodNames))));
  restore_cmd->add_option("--w-max", w_max, "detector window cap");
  restore_cmd->add_option("--alpha-min", alpha_min, "continuation floor");
  restore_cmd->add_option("--rel-u-tol", rel_u_tol, "relative step tolerance");
  restore_cmd->add_option("--rel-f-tol", rel_f_tol, "relative cost tolerance");
  restore_cmd->add_option("--ite-max", ite_max, "iteration cap per stage");
  restore_cmd->add_option("--minres-tol", minres_tol, "inner solver tolerance");
  restore_cmd->add_option("--ref", ref_path, "clean reference; print PSNR against it");

  // psnr
  auto* psnr_cmd = app.add_subcommand("psnr", "PSNR/MSE between two images");
  std::string test_path;
  psnr_cmd->add_option("reference", ref_path, "reference PGM")->required();
  psnr_cmd->add_option("test", test_path, "test PGM")->required();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark grid over images x ratios x methods");
  sp::ExperimentConfig bench_cfg;
  std::vector<std::string> bench_methods(std::begin(kMethodNames), std::end(kMethodNames));
  bench_cmd->add_option("--images", bench_cfg.image_paths, "input PGM files")->required();
  bench_cmd->add_option("--ratio", bench_cfg.ratios, "noise ratios (p = q = r/2)");
  bench_cmd->add_option("--method", bench_methods, "methods to run")
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(kMethodNames), std::end(kMethodNames))));
  bench_cmd->add_option("--reps", bench_cfg.repetitions, "repetitions per cell");
  bench_cmd->add_option("--seed", bench_cfg.seed_base, "base seed");
  bench_cmd->add_option("--w-max", bench_cfg.w_max, "detector window cap");
  bench_cmd->add_option("--alpha-min", bench_cfg.schedule.alpha_min, "continuation floor");
  bench_cmd->add_option("--ite-max", bench_cfg.stop.ite_max, "iteration cap per stage");
  bench_cmd->add_option("--rel-u-tol", bench_cfg.stop.rel_u_tol, "relative step tolerance");
  bench_cmd->add_option("--rel-f-tol", bench_cfg.stop.rel_f_tol, "relative cost tolerance");
  bench_cmd->add_option("--jobs", bench_cfg.jobs, "parallel image/ratio groups");
  bench_cmd->add_flag("--no-timing", bench_cfg.no_timing, "zero timing columns (golden runs)");
  bench_cmd->add_option("--out", out_csv, "output CSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (corrupt_cmd->parsed())
      return run_corrupt(in, out, p, q, ratio, seed, s_min, s_max, mask_out);
    if (detect_cmd->parsed()) return run_detect(in, w_max, s_min, s_max, mask_out, u0_out);
    if (restore_cmd->parsed())
      return run_restore(in, out, method_name, w_max, alpha_min, rel_u_tol, rel_f_tol, ite_max,
                         minres_tol, ref_path);
    if (psnr_cmd->parsed()) return run_psnr(ref_path, test_path);
    if (bench_cmd->parsed()) return run_bench(bench_cfg, bench_methods, out_csv);
  } catch (const sp::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const sp::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
