#include "trichonet/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "trichonet/text.hpp"

#include "json.hpp"

namespace trichonet {

namespace {

struct Segment {
  std::vector<int> degrees;
  std::vector<double> pmf;
};

Segment occupied_bins(const DegreeHistogram& hist, int lo, int hi) {
  Segment seg;
  for (const auto& [degree, count] : hist.counts()) {
    if (degree < lo || degree < 1) continue;
    if (degree > hi) break;
    if (count <= 0) continue;
    seg.degrees.push_back(degree);
    seg.pmf.push_back(hist.pmf(degree));
  }
  return seg;
}

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double mse = 0.0;
  int points = 0;
};

std::optional<LogLogFit> ols_loglog(const Segment& seg) {
  const int n = static_cast<int>(seg.degrees.size());
  if (n < 3) return std::nullopt;
  double sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    sx += std::log(seg.degrees[i]);
    sy += std::log(seg.pmf[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double dx = std::log(seg.degrees[i]) - mx;
    const double dy = std::log(seg.pmf[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  if (sxx <= 0) return std::nullopt;
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = n;
  double ssr = 0;
  for (int i = 0; i < n; ++i) {
    const double r = std::log(seg.pmf[i]) - (fit.intercept + fit.slope * std::log(seg.degrees[i]));
    ssr += r * r;
  }
  fit.mse = ssr / n;
  return fit;
}

std::optional<PowerLawSegmentFit> try_segment(const DegreeHistogram& hist, int lo, int hi) {
  if (lo < 1 || lo >= hi) return std::nullopt;
  const auto fit = ols_loglog(occupied_bins(hist, lo, hi));
  if (!fit) return std::nullopt;
  PowerLawSegmentFit out;
  out.lower = lo;
  out.upper = hi;
  out.amplitude = std::exp(fit->intercept);
  out.exponent = -fit->slope;
  out.mse = fit->mse;
  out.points = fit->points;
  return out;
}

double geometric_component(double p, int k, int truncation, HeadMixtureConvention convention) {
  const int first = convention == HeadMixtureConvention::Inclusive ? truncation : truncation + 1;
  if (k < first) return 0.0;
  return p * std::pow(1.0 - p, k - truncation);
}

double rmse_of(const std::vector<double>& a, const std::vector<double>& b) {
  double ssr = 0;
  for (std::size_t i = 0; i < a.size(); ++i) ssr += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(ssr / static_cast<double>(a.size()));
}

}  // namespace

double rmse(const std::vector<double>& fitted, const std::vector<double>& empirical) {
  if (fitted.size() != empirical.size() || fitted.empty())
    throw FitError("rmse requires equal nonempty supports");
  return rmse_of(fitted, empirical);
}

PowerLawSegmentFit fit_power_law_segment(const DegreeHistogram& hist, int initial_lower,
                                         int initial_upper) {
  if (hist.empty()) throw FitError("cannot fit an empty histogram");
  const int k_lo = std::max(1, hist.k_min());
  const int k_hi = hist.k_max();
  if (initial_lower >= initial_upper)
    throw FitError("initial segment must satisfy lower < upper");
  auto base = try_segment(hist, initial_lower, initial_upper);
  if (!base) throw FitError("initial power-law segment is degenerate (< 3 occupied bins)");

  // Walk one endpoint while the refit MSE strictly improves; on equal MSE
  // between the two directions keep the wider segment.
  auto walk = [&](PowerLawSegmentFit from, bool move_lower, int step) {
    PowerLawSegmentFit best = from;
    for (;;) {
      const int lo = best.lower + (move_lower ? step : 0);
      const int hi = best.upper + (move_lower ? 0 : step);
      if (lo < std::max(1, k_lo) || hi > k_hi || lo >= hi) break;
      const auto cand = try_segment(hist, lo, hi);
      if (!cand || cand->mse >= best.mse) break;
      best = *cand;
    }
    return best;
  };

  PowerLawSegmentFit down = walk(*base, true, -1);   // widen left
  PowerLawSegmentFit up = walk(*base, true, +1);     // shrink left
  PowerLawSegmentFit after_lower = (down.mse <= up.mse) ? down : up;

  down = walk(after_lower, false, -1);  // shrink right
  up = walk(after_lower, false, +1);    // widen right
  return (up.mse <= down.mse) ? up : down;
}

HeadFit fit_head(const DegreeHistogram& hist, double gamma_fit, int lower_threshold,
                 int max_head_params, HeadMixtureConvention convention) {
  if (max_head_params < 1) throw FitError("max_head_params must be >= 1");
  if (!(gamma_fit > 0)) throw FitError("head fit requires a positive exponent");
  HeadFit out;
  if (lower_threshold < 2) return out;  // no head phase
  out.present = true;
  out.geometric_param = gamma_fit / (lower_threshold + gamma_fit);

  const auto seg = occupied_bins(hist, 1, lower_threshold);
  if (seg.degrees.empty()) {
    out.present = false;
    return out;
  }
  const double p_a = out.geometric_param;
  auto component = [&](int truncation, int k) {
    return geometric_component(p_a, k, truncation, convention);
  };

  std::vector<double> fixed(seg.degrees.size(), 0.0);
  double remaining = 1.0;
  double prev_rmse = std::numeric_limits<double>::infinity();

  for (int cur = 1; cur <= max_head_params; ++cur) {
    // least squares for this component's weight, remainder on the next one
    double num = 0, den = 0;
    for (std::size_t i = 0; i < seg.degrees.size(); ++i) {
      const int k = seg.degrees[i];
      const double d = component(cur, k) - component(cur + 1, k);
      const double base = fixed[i] + remaining * component(cur + 1, k);
      num += d * (seg.pmf[i] - base);
      den += d * d;
    }
    double w = den > 0 ? num / den : 0.0;
    if (w < 0.0 || w > remaining) {
      w = std::clamp(w, 0.0, remaining);
      out.clipped = true;
    }
    out.weights.push_back(w);
    remaining -= w;
    for (std::size_t i = 0; i < seg.degrees.size(); ++i)
      fixed[i] += w * component(cur, seg.degrees[i]);

    std::vector<double> model(seg.degrees.size());
    for (std::size_t i = 0; i < seg.degrees.size(); ++i)
      model[i] = fixed[i] + remaining * component(cur + 1, seg.degrees[i]);
    out.rmse = rmse_of(model, seg.pmf);

    // the remainder already fits the rest of the head
    if (prev_rmse - out.rmse <= 1e-3 * prev_rmse) break;
    prev_rmse = out.rmse;
  }
  return out;
}

TailFit fit_tail(const DegreeHistogram& hist, double gamma_fit, int upper_threshold) {
  if (!(gamma_fit > 0)) throw FitError("tail fit requires a positive exponent");
  if (hist.empty() || upper_threshold >= hist.k_max())
    throw FitError("tail segment must lie inside the histogram support");
  TailFit out;
  out.geometric_param = gamma_fit / (upper_threshold + gamma_fit);

  const auto seg = occupied_bins(hist, upper_threshold, hist.k_max());
  if (seg.degrees.size() < 2) {
    out.skipped = true;
    return out;
  }
  const double p_b = out.geometric_param;
  double acc = 0;
  for (std::size_t i = 0; i < seg.degrees.size(); ++i) {
    const double model = p_b * std::pow(1.0 - p_b, seg.degrees[i] - 1);
    acc += std::log(seg.pmf[i]) - std::log(model);
  }
  out.coefficient = std::exp(acc / static_cast<double>(seg.degrees.size()));

  std::vector<double> model(seg.degrees.size());
  for (std::size_t i = 0; i < seg.degrees.size(); ++i)
    model[i] = out.coefficient * p_b * std::pow(1.0 - p_b, seg.degrees[i] - 1);
  out.rmse = rmse_of(model, seg.pmf);
  return out;
}

PurePowerLawFit fit_pure_power_law(const DegreeHistogram& hist) {
  if (hist.empty()) throw FitError("cannot fit an empty histogram");
  const auto seg = occupied_bins(hist, std::max(1, hist.k_min()), hist.k_max());
  const auto fit = ols_loglog(seg);
  if (!fit) throw FitError("power-law fit needs >= 3 occupied bins");
  PurePowerLawFit out;
  out.amplitude = std::exp(fit->intercept);
  out.exponent = -fit->slope;
  std::vector<double> model(seg.degrees.size());
  for (std::size_t i = 0; i < seg.degrees.size(); ++i)
    model[i] = out.amplitude * std::pow(seg.degrees[i], -out.exponent);
  out.rmse = rmse_of(model, seg.pmf);
  return out;
}

FitReport fit_trichotomy(const DegreeHistogram& hist, const FitConfig& config) {
  if (hist.empty()) throw FitError("cannot fit an empty histogram");
  const int k_min = std::max(1, hist.k_min());
  const int k_max = hist.k_max();

  int lower0 = config.initial_lower;
  int upper0 = config.initial_upper;
  if (upper0 <= 0) {
    // default: tail onset guessed at the 99% mass quantile
    double acc = 0;
    upper0 = k_max;
    for (const auto& [degree, count] : hist.counts()) {
      acc += hist.pmf(degree);
      if (acc >= 0.99) {
        upper0 = degree;
        break;
      }
    }
    upper0 = std::min(upper0, k_max - 1);
  }
  if (lower0 <= 0) lower0 = std::max(2, k_min + 1);
  upper0 = std::max(upper0, lower0 + 2);

  FitReport report;
  report.dataset = config.dataset;

  const PowerLawSegmentFit step1 = fit_power_law_segment(hist, lower0, upper0);
  report.lower_threshold = step1.lower;
  report.upper_threshold = step1.upper;
  report.exponent = -step1.exponent;
  report.amplitude = step1.amplitude;

  double gamma_eff = config.gamma_convention == GammaConvention::Literal
                         ? step1.exponent
                         : step1.exponent - 1.0;
  gamma_eff = std::max(gamma_eff, 0.05);

  report.head = fit_head(hist, gamma_eff, step1.lower, config.max_head_params,
                         config.head_convention);
  try {
    report.tail = fit_tail(hist, gamma_eff, step1.upper);
  } catch (const FitError&) {
    report.tail.skipped = true;
  }

  // stitched curve over occupied bins
  const auto all = occupied_bins(hist, k_min, k_max);
  report.curve_degrees = all.degrees;
  report.curve_empirical = all.pmf;
  report.curve_fitted.resize(all.degrees.size());

  auto power_value = [&](int k) { return step1.amplitude * std::pow(k, -step1.exponent); };
  auto head_value = [&](int k) {
    double acc = 0;
    double remaining = 1.0;
    for (std::size_t j = 0; j < report.head.weights.size(); ++j) {
      acc += report.head.weights[j] *
             geometric_component(report.head.geometric_param, k, static_cast<int>(j) + 1,
                                 config.head_convention);
      remaining -= report.head.weights[j];
    }
    acc += remaining * geometric_component(report.head.geometric_param, k,
                                           static_cast<int>(report.head.weights.size()) + 1,
                                           config.head_convention);
    return acc;
  };
  auto tail_value = [&](int k) {
    return report.tail.coefficient * report.tail.geometric_param *
           std::pow(1.0 - report.tail.geometric_param, k - 1);
  };

  std::vector<double> phase_model[3], phase_emp[3];
  for (std::size_t i = 0; i < all.degrees.size(); ++i) {
    const int k = all.degrees[i];
    double v;
    int phase;
    if (k <= step1.lower && report.head.present) {
      v = head_value(k);
      phase = 0;
    } else if (k > step1.upper && !report.tail.skipped) {
      v = tail_value(k);
      phase = 2;
    } else {
      v = power_value(k);
      phase = 1;
    }
    report.curve_fitted[i] = v;
    phase_model[phase].push_back(v);
    phase_emp[phase].push_back(all.pmf[i]);
  }
  report.rmse_trichotomy = rmse_of(report.curve_fitted, all.pmf);
  for (int ph = 0; ph < 3; ++ph)
    report.per_phase_rmse[ph] =
        phase_emp[ph].empty() ? 0.0 : rmse_of(phase_model[ph], phase_emp[ph]);

  const PurePowerLawFit baseline = fit_pure_power_law(hist);
  report.rmse_power_law_only = baseline.rmse;
  report.power_law_only_exponent = baseline.exponent;
  report.power_law_only_amplitude = baseline.amplitude;
  return report;
}

std::string report_to_json(const FitReport& report) {
  nlohmann::json j;
  j["dataset"] = report.dataset;
  j["lower_threshold"] = report.lower_threshold;
  j["upper_threshold"] = report.upper_threshold;
  j["exponent"] = round_g9(report.exponent);
  j["amplitude"] = round_g9(report.amplitude);
  j["head"] = {
      {"present", report.head.present},
      {"geometric_param", round_g9(report.head.geometric_param)},
      {"weights", report.head.weights},
      {"clipped", report.head.clipped},
      {"rmse", round_g9(report.head.rmse)},
  };
  j["tail"] = {
      {"skipped", report.tail.skipped},
      {"geometric_param", round_g9(report.tail.geometric_param)},
      {"coefficient", round_g9(report.tail.coefficient)},
      {"rmse", round_g9(report.tail.rmse)},
  };
  j["rmse_trichotomy"] = round_g9(report.rmse_trichotomy);
  j["rmse_power_law_only"] = round_g9(report.rmse_power_law_only);
  j["per_phase_rmse"] = {round_g9(report.per_phase_rmse[0]), round_g9(report.per_phase_rmse[1]),
                         round_g9(report.per_phase_rmse[2])};
  j["power_law_only"] = {
      {"exponent", round_g9(report.power_law_only_exponent)},
      {"amplitude", round_g9(report.power_law_only_amplitude)},
  };
  return j.dump(2) + "\n";
}

std::string report_csv_header() { return "dataset,L,U,exponent,rmse_ours,rmse_pl"; }

std::string report_csv_row(const FitReport& report) {
  std::ostringstream out;
  out << report.dataset << ',' << report.lower_threshold << ',' << report.upper_threshold << ','
      << format_g9(report.exponent) << ',' << format_g9(report.rmse_trichotomy) << ','
      << format_g9(report.rmse_power_law_only);
  return out.str();
}

}  // namespace trichonet
