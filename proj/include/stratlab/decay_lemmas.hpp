#pragma once
// Sampled-trajectory versions of three differential-inequality lemmas, with
// the constants made explicit (see docs/constants.md), and power-law fits.

#include <cstddef>
#include <string>
#include <vector>

namespace stratlab {

class Trajectory {
 public:
  /// Throws std::invalid_argument unless sizes match, size >= 3, times are
  /// strictly increasing and values are finite and nonnegative.
  Trajectory(std::vector<double> times, std::vector<double> values);

  const std::vector<double>& times() const { return t_; }
  const std::vector<double>& values() const { return v_; }
  std::size_t size() const { return t_.size(); }
  /// Linear interpolation; t must lie in the sampled range.
  double at(double t) const;
  /// Trapezoid integral over [a, b] of the linear interpolant.
  double integral(double a, double b) const;
  /// Samples with times in [a, b].
  Trajectory window(double a, double b) const;

 private:
  std::vector<double> t_;
  std::vector<double> v_;
};

/// (2/t) * integral over [t/2, t]. Throws std::out_of_range if [t/2, t] is not sampled.
double time_average(const Trajectory& tr, double t);

enum class Verdict { holds, fails, not_applicable };
std::string verdict_name(Verdict v);

inline constexpr double kHypothesisSlack = 1e-8;

/// Discrete form of f' <= -g: on every interval the secant is at most
/// -min(g_i, g_{i+1}), and at every interior sample the smaller of the two
/// adjacent secants is at most -g_i, each up to 1e-8 (1 + |f_i|).
bool derivative_hypothesis(const Trajectory& f, const std::vector<double>& g);

struct Lemma21Result {
  Verdict verdict = Verdict::not_applicable;
  double margin = 0.0;  // min (bound - f) / bound over samples with t > t0
};

/// f' <= -a^{-alpha} f^n implies f(t)^{n-1} <= A(t)^alpha / ((n-1) t^{alpha+1}),
/// A(t) = int_{t0}^t a, with time measured from the first sample.
Lemma21Result lemma21_bound(const Trajectory& f, const Trajectory& a, double alpha, double n);

struct Lemma22Result {
  Verdict g = Verdict::not_applicable;
  Verdict h = Verdict::not_applicable;
  double g_margin = 0.0;
  double h_margin = 0.0;
  std::size_t g_checked = 0;
  std::size_t h_checked = 0;
};

/// f' <= -g, g' <= -h, f <= C t^{-n} imply
///   time_average(g, t) <= 2^{n+1} C t^{-(n+1)}   (t/2 sampled)
///   time_average(h, t) <= 2^{2n+3} C t^{-(n+2)}  (t/4 sampled)
/// Times are absolute and must be positive.
Lemma22Result lemma22_check(const Trajectory& f, const Trajectory& g, const Trajectory& h, double n, double C);

struct Lemma23Result {
  Verdict verdict = Verdict::not_applicable;
  double integral = 0.0;  // int_1^T f^alpha
  double bound = 0.0;     // C_{alpha,n} E^alpha
};

/// Constant of the dyadic-sum bound.
double lemma23_constant(double alpha, double n);
/// Hypothesis time_average(f, t) <= E t^{-n} checked at t = 2 and at the
/// dyadic points T / 2^i >= 2; then int_1^T f^alpha <= C_{alpha,n} E^alpha.
Lemma23Result lemma23_check(const Trajectory& f, double n, double E, double alpha);

struct PowerFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

/// Least squares of log value against log t over samples in [t_min, t_max]
/// with positive values. Throws std::invalid_argument with fewer than 8.
PowerFit fit_power_law(const Trajectory& tr, double t_min, double t_max);

/// Smallest C with f(t) <= C t^{-n} at every sample (times must be positive).
double power_prefactor(const Trajectory& tr, double n);

}  // namespace stratlab
