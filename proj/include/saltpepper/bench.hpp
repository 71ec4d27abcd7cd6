#ifndef SALTPEPPER_BENCH_HPP
#define SALTPEPPER_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "saltpepper/amf.hpp"
#include "saltpepper/restore.hpp"

namespace saltpepper {

/// Benchmark grid: images x noise ratios x methods, each cell averaged over
/// `repetitions` independently seeded corruptions. A target ratio r is
/// realized as p = q = r/2. The same corruption (and detector output) is
/// shared by every method within one repetition.
struct ExperimentConfig {
  std::vector<std::string> image_paths;
  std::vector<double> ratios = {0.3, 0.5, 0.7, 0.9};
  std::vector<Method> methods = {Method::relax, Method::newton_minres, Method::cg_fr,
                                 Method::cg_pr, Method::cg_hs};
  int repetitions = 5;
  std::uint64_t seed_base = 0;
  int w_max = 39;
  ContinuationSchedule schedule;
  StopCriteria stop;
  MinresConfig minres;
  bool no_timing = false;  ///< zero the timing column (golden-file runs)
  int jobs = 1;            ///< parallel (image, ratio) groups

  void validate() const;
};

struct BenchRow {
  std::string image;
  double ratio = 0.0;
  Method method = Method::relax;
  double mean_time_s = 0.0;   ///< phase two only
  double mean_psnr_db = 0.0;  ///< restored (pre-quantization) vs clean input
  double mean_iters = 0.0;
  StopReason stop_reason_mode = StopReason::tolerance;
  std::string status = "ok";
};

/// Run the whole grid. Per-cell failures are recorded in the row status and
/// do not abort the run. Rows come back in config order (images outermost,
/// then ratios, then methods) regardless of `jobs`.
std::vector<BenchRow> run_benchmark(const ExperimentConfig& cfg);

/// CSV with header image,ratio,method,mean_time_s,mean_psnr_db,mean_iters,
/// stop_reason_mode,status; '.' decimal separator, fixed formatting.
void write_csv(const std::vector<BenchRow>& rows, std::ostream& os);

std::string to_csv(const std::vector<BenchRow>& rows);

}  // namespace saltpepper

#endif
