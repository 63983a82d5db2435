#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trichonet/histogram.hpp"

namespace trichonet {

// Which gamma enters the head/tail geometric parameters p_a and p_b:
// Literal uses the step-1 exponent magnitude itself; TheoremOffset uses
// exponent - 1 (the closed form has exponent -(gamma + 1)).
enum class GammaConvention { Literal, TheoremOffset };

// Truncation convention of the head mixture: component i supported on
// k >= i (the fitting formula), or shifted to k >= i + 1 (the geometric
// mixture's summation-to-k-1 form).
enum class HeadMixtureConvention { Inclusive, Shifted };

struct FitConfig {
  int initial_lower = 0;  // segment endpoints the boundary search starts from
  int initial_upper = 0;
  int max_head_params = 1;
  GammaConvention gamma_convention = GammaConvention::Literal;
  HeadMixtureConvention head_convention = HeadMixtureConvention::Inclusive;
  std::string dataset;
};

struct PowerLawSegmentFit {
  int lower = 0;         // fitted segment [lower, upper]
  int upper = 0;
  double amplitude = 0.0;   // a in p = a * k^{-exponent}
  double exponent = 0.0;    // magnitude of the slope
  double mse = 0.0;         // log-space mean squared residual
  int points = 0;
};

struct HeadFit {
  bool present = false;     // false when the head phase is empty (LL < 2)
  double geometric_param = 0.0;  // p_a
  std::vector<double> weights;   // fitted truncation weights, first components
  bool clipped = false;          // some weight hit the [0, 1] box
  double rmse = 0.0;             // linear-space, head segment
};

struct TailFit {
  bool skipped = false;
  double geometric_param = 0.0;  // p_b
  double coefficient = 0.0;      // c
  double rmse = 0.0;
};

struct FitReport {
  std::string dataset;
  int lower_threshold = 0;   // fitted LL
  int upper_threshold = 0;   // fitted UU
  double exponent = 0.0;     // signed slope (-gamma_fit)
  double amplitude = 0.0;
  HeadFit head;
  TailFit tail;
  double rmse_trichotomy = 0.0;
  double rmse_power_law_only = 0.0;
  double per_phase_rmse[3] = {0.0, 0.0, 0.0};  // head, middle, tail
  double power_law_only_exponent = 0.0;
  double power_law_only_amplitude = 0.0;
  // empirical pmf alongside the stitched fit, for plotting
  std::vector<int> curve_degrees;
  std::vector<double> curve_empirical;
  std::vector<double> curve_fitted;
};

// Root-mean-square error in linear probability space; supports must match.
double rmse(const std::vector<double>& fitted, const std::vector<double>& empirical);

// Step 1: log-log least squares on [lower, upper] with the greedy
// boundary search (each endpoint walked in both directions while the
// segment MSE improves; ties resolve toward the wider segment).
PowerLawSegmentFit fit_power_law_segment(const DegreeHistogram& hist, int initial_lower,
                                         int initial_upper);

// Step 2: truncated-geometric mixture on [1, LL] with p_a fixed by the
// step-1 exponent; iteratively adds mixture components until the remainder
// fits or max_head_params is reached.
HeadFit fit_head(const DegreeHistogram& hist, double gamma_fit, int lower_threshold,
                 int max_head_params,
                 HeadMixtureConvention convention = HeadMixtureConvention::Inclusive);

// Step 3: single-coefficient geometric tail on [UU, k_max], log-space.
TailFit fit_tail(const DegreeHistogram& hist, double gamma_fit, int upper_threshold);

// Steps 1-3 plus the stitched curve, per-phase RMSE and the pure
// power-law baseline.
FitReport fit_trichotomy(const DegreeHistogram& hist, const FitConfig& config);

struct PurePowerLawFit {
  double amplitude = 0.0;
  double exponent = 0.0;  // magnitude
  double rmse = 0.0;
};

PurePowerLawFit fit_pure_power_law(const DegreeHistogram& hist);

std::string report_to_json(const FitReport& report);
std::string report_csv_header();
std::string report_csv_row(const FitReport& report);

}  // namespace trichonet
