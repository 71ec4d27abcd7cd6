#include "saltpepper/bench.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <ostream>
#include <sstream>

#include "saltpepper/errors.hpp"
#include "saltpepper/metrics.hpp"
#include "saltpepper/noise.hpp"
#include "saltpepper/rng.hpp"

namespace saltpepper {

void ExperimentConfig::validate() const {
  if (image_paths.empty()) throw ConfigError("bench: no input images");
  if (ratios.empty()) throw ConfigError("bench: no noise ratios");
  for (double r : ratios)
    if (!(r > 0.0 && r < 1.0)) throw ConfigError("bench: ratios must lie in (0, 1)");
  if (methods.empty()) throw ConfigError("bench: no methods");
  if (repetitions < 1) throw ConfigError("bench: repetitions must be >= 1");
  if (jobs < 1) throw ConfigError("bench: jobs must be >= 1");
  stop.validate();
  schedule.validate();
  minres.validate();
}

namespace {

// Stable per-repetition seed derived from the base seed and grid position.
std::uint64_t derive_seed(std::uint64_t base, std::size_t image_idx, std::size_t ratio_idx,
                          int rep) {
  std::uint64_t s = base;
  splitmix64_next(s);
  s ^= 0x9e3779b97f4a7c15ULL * (image_idx + 1);
  splitmix64_next(s);
  s ^= 0x9e3779b97f4a7c15ULL * (ratio_idx + 1);
  splitmix64_next(s);
  s ^= 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(rep) + 1);
  return splitmix64_next(s);
}

struct CellAccum {
  double time_sum = 0.0;
  double psnr_sum = 0.0;
  double iters_sum = 0.0;
  int reason_counts[3] = {0, 0, 0};
  std::string status = "ok";

  void record_failure(const std::string& s) {
    if (status == "ok") status = s;
  }
};

// Restored pixels off the candidate set must be bit-identical to the
// observed image, and every stage has to respect the stopping contract.
bool verify_invariants(const GrayImage& observed, const NoiseMask& mask,
                       const GrayImage& restored, const SolverReport& report,
                       const StopCriteria& stop, std::string& why) {
  for (int r = 0; r < observed.height(); ++r) {
    for (int c = 0; c < observed.width(); ++c) {
      if (!mask.flagged(r, c) && restored.at(r, c) != observed.at(r, c)) {
        why = "invariant_violation";
        return false;
      }
    }
  }
  for (const auto& s : report.outer_stages) {
    const bool tol_ok = s.final_rel_du <= stop.rel_u_tol && s.final_rel_df <= stop.rel_f_tol;
    if (s.iterations > stop.ite_max ||
        (s.stop_reason == StopReason::tolerance && s.iterations > 0 && !tol_ok) ||
        (s.stop_reason == StopReason::ite_max && s.iterations != stop.ite_max)) {
      why = "stop_criteria_violation";
      return false;
    }
  }
  why.clear();
  return true;
}

std::vector<BenchRow> run_group(const ExperimentConfig& cfg, std::size_t image_idx,
                                std::size_t ratio_idx, const GrayImage& clean) {
  const double ratio = cfg.ratios[ratio_idx];
  std::vector<CellAccum> cells(cfg.methods.size());

  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    GrayImage corrupted;
    NoiseMask truth_mask;
    NoiseMask mask;
    GrayImage u0;
    bool prep_ok = true;
    try {
      NoiseSpec spec;
      spec.p = ratio / 2.0;
      spec.q = ratio / 2.0;
      spec.seed = derive_seed(cfg.seed_base, image_idx, ratio_idx, rep);
      auto [noisy, overwrite] = corrupt(clean, spec);
      corrupted = std::move(noisy);
      truth_mask = std::move(overwrite);
      AmfConfig amf;
      amf.w_max = cfg.w_max;
      auto [detected, guess] = adaptive_median(corrupted, amf);
      mask = std::move(detected);
      u0 = std::move(guess);
    } catch (const std::exception&) {
      prep_ok = false;
    }

    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
      CellAccum& cell = cells[mi];
      if (!prep_ok) {
        cell.record_failure("numerical_error");
        continue;
      }
      try {
        auto [restored, report] =
            restore(corrupted, mask, u0, cfg.methods[mi], cfg.schedule, cfg.stop, cfg.minres);
        std::string why;
        if (!verify_invariants(corrupted, mask, restored, report, cfg.stop, why)) {
          cell.record_failure(why);
          continue;
        }
        cell.time_sum += report.elapsed_seconds;
        cell.psnr_sum += psnr(clean, restored);
        cell.iters_sum += static_cast<double>(report.total_iterations);
        cell.reason_counts[static_cast<int>(report.stop_reason)] += 1;
      } catch (const IoError&) {
        cell.record_failure("io_error");
      } catch (const ConfigError&) {
        cell.record_failure("config_error");
      } catch (const std::exception&) {
        cell.record_failure("numerical_error");
      }
    }
  }

  std::vector<BenchRow> rows;
  rows.reserve(cfg.methods.size());
  for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    const CellAccum& cell = cells[mi];
    BenchRow row;
    row.image = cfg.image_paths[image_idx];
    row.ratio = ratio;
    row.method = cfg.methods[mi];
    row.status = cell.status;
    if (cell.status == "ok") {
      const double reps = static_cast<double>(cfg.repetitions);
      row.mean_time_s = cfg.no_timing ? 0.0 : cell.time_sum / reps;
      row.mean_psnr_db = cell.psnr_sum / reps;
      row.mean_iters = cell.iters_sum / reps;
      int best = 0;
      for (int i = 1; i < 3; ++i)
        if (cell.reason_counts[i] > cell.reason_counts[best]) best = i;
      row.stop_reason_mode = static_cast<StopReason>(best);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<BenchRow> run_benchmark(const ExperimentConfig& cfg) {
  cfg.validate();

  std::vector<GrayImage> images;
  images.reserve(cfg.image_paths.size());
  for (const auto& path : cfg.image_paths) images.push_back(load_pgm(path));

  struct Group {
    std::size_t image_idx;
    std::size_t ratio_idx;
  };
  std::vector<Group> groups;
  for (std::size_t ii = 0; ii < cfg.image_paths.size(); ++ii)
    for (std::size_t ri = 0; ri < cfg.ratios.size(); ++ri) groups.push_back({ii, ri});

  std::vector<std::vector<BenchRow>> results(groups.size());
  if (cfg.jobs <= 1) {
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
      results[gi] = run_group(cfg, groups[gi].image_idx, groups[gi].ratio_idx,
                              images[groups[gi].image_idx]);
  } else {
    std::size_t next = 0;
    while (next < groups.size()) {
      const std::size_t batch = std::min<std::size_t>(cfg.jobs, groups.size() - next);
      std::vector<std::future<std::vector<BenchRow>>> futs;
      for (std::size_t j = 0; j < batch; ++j) {
        const Group g = groups[next + j];
        futs.push_back(std::async(std::launch::async, [&cfg, g, &images] {
          return run_group(cfg, g.image_idx, g.ratio_idx, images[g.image_idx]);
        }));
      }
      for (std::size_t j = 0; j < batch; ++j) results[next + j] = futs[j].get();
      next += batch;
    }
  }

  std::vector<BenchRow> rows;
  rows.reserve(groups.size() * cfg.methods.size());
  for (auto& group_rows : results)
    for (auto& row : group_rows) rows.push_back(std::move(row));
  return rows;
}

namespace {

std::string format_double(double v, const char* fmt) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

void write_csv(const std::vector<BenchRow>& rows, std::ostream& os) {
  os << "image,ratio,method,mean_time_s,mean_psnr_db,mean_iters,stop_reason_mode,status\n";
  for (const auto& row : rows) {
    os << row.image << ',' << format_double(row.ratio, "%.6g") << ',' << to_string(row.method)
       << ',' << format_double(row.mean_time_s, "%.6f") << ','
       << format_double(row.mean_psnr_db, "%.6f") << ',' << format_double(row.mean_iters, "%.2f")
       << ',' << to_string(row.stop_reason_mode) << ',' << row.status << '\n';
  }
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  write_csv(rows, os);
  return os.str();
}

}  // namespace saltpepper
