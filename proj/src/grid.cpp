#include "stratlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "grid_resources.hpp"
#include "stratlab/kernels.hpp"

namespace stratlab {

namespace detail {

namespace {
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

GridResources::GridResources(std::size_t n1, std::size_t n2, int fd_order)
    : first(n2, 1.0 / static_cast<double>(n2 - 1), 1, fd_order),
      second(n2, 1.0 / static_cast<double>(n2 - 1), 2, fd_order) {
  x1.resize(n1);
  x2.resize(n2);
  for (std::size_t i = 0; i < n1; ++i)
    x1[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n1);
  for (std::size_t j = 0; j < n2; ++j) x2[j] = static_cast<double>(j) / static_cast<double>(n2 - 1);

  const double h = 1.0 / static_cast<double>(n2 - 1);
  weights.assign(n2, h);
  weights.front() = 0.5 * h;
  weights.back() = 0.5 * h;

  std::vector<double> real(n1 * n2);
  std::vector<fftw_complex> cplx((n1 / 2 + 1) * n2);
  const int n[1] = {static_cast<int>(n1)};
  const int howmany = static_cast<int>(n2);
  const int stride = static_cast<int>(n2);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(fftw_planner_mutex());
  forward = fftw_plan_many_dft_r2c(1, n, howmany, real.data(), nullptr, stride, 1, cplx.data(), nullptr,
                                   stride, 1, flags);
  backward = fftw_plan_many_dft_c2r(1, n, howmany, cplx.data(), nullptr, stride, 1, real.data(), nullptr,
                                    stride, 1, flags);
  if (forward == nullptr || backward == nullptr) throw std::runtime_error("FFTW planning failed");
}

GridResources::~GridResources() {
  std::lock_guard lock(fftw_planner_mutex());
  if (forward != nullptr) fftw_destroy_plan(forward);
  if (backward != nullptr) fftw_destroy_plan(backward);
}

}  // namespace detail

namespace {

std::shared_ptr<const detail::GridResources> shared_resources(std::size_t n1, std::size_t n2, int fd) {
  static std::mutex m;
  static std::map<std::tuple<std::size_t, std::size_t, int>, std::shared_ptr<const detail::GridResources>> cache;
  std::lock_guard lock(m);
  auto key = std::make_tuple(n1, n2, fd);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto res = std::make_shared<const detail::GridResources>(n1, n2, fd);
  cache.emplace(key, res);
  return res;
}

void require_same(const Grid& a, const Grid& b) {
  if (!a.same_as(b)) throw std::invalid_argument("grid mismatch between operands");
}

}  // namespace

Grid::Grid(std::size_t n1, std::size_t n2, int fd_order) : n1_(n1), n2_(n2), fd_order_(fd_order) {
  if (n1 < 8 || n1 % 2 != 0) throw std::invalid_argument("n1 must be even and >= 8");
  if (n2 < 9) throw std::invalid_argument("n2 must be >= 9");
  if (fd_order != 2 && fd_order != 4) throw std::invalid_argument("fd_order must be 2 or 4");
  res_ = shared_resources(n1, n2, fd_order);
}

double Grid::dx1() const { return 2.0 * std::numbers::pi / static_cast<double>(n1_); }
double Grid::dx2() const { return 1.0 / static_cast<double>(n2_ - 1); }
double Grid::x1(std::size_t i) const { return res_->x1[i]; }
double Grid::x2(std::size_t j) const { return res_->x2[j]; }
const std::vector<double>& Grid::vertical_weights() const { return res_->weights; }
const VerticalOperator& Grid::d2_first() const { return res_->first; }
const VerticalOperator& Grid::d2_second() const { return res_->second; }

bool Grid::same_as(const Grid& o) const {
  return n1_ == o.n1_ && n2_ == o.n2_ && fd_order_ == o.fd_order_;
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw std::invalid_argument("field size does not match grid");
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same(grid_, o.grid_);
  kernels::active().axpy(values_.size(), 1.0, o.values_.data(), values_.data());
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same(grid_, o.grid_);
  kernels::active().axpy(values_.size(), -1.0, o.values_.data(), values_.data());
  return *this;
}

ScalarField& ScalarField::operator*=(double a) {
  for (double& v : values_) v *= a;
  return *this;
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double a, ScalarField b) { return b *= a; }

ModalField::ModalField(const Grid& grid) : grid_(grid), coeffs_(grid.modes() * grid.n2()) {}

Profile::Profile(const Grid& grid) : grid_(grid), values_(grid.n2(), 0.0) {}

Profile::Profile(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n2()) throw std::invalid_argument("profile length does not match grid");
}

ScalarField Profile::lift() const {
  ScalarField f(grid_);
  for (std::size_t i = 0; i < grid_.n1(); ++i) std::copy(values_.begin(), values_.end(), f.column(i));
  return f;
}

// ---------------------------------------------------------------------------

ModalField to_modal(const ScalarField& f) {
  const Grid& g = f.grid();
  ModalField m(g);
  // FFTW's r2c does not modify its input when the plan is out-of-place.
  fftw_execute_dft_r2c(g.resources().forward, const_cast<double*>(f.values().data()),
                       reinterpret_cast<fftw_complex*>(m.coeffs().data()));
  const double inv = 1.0 / static_cast<double>(g.n1());
  for (auto& c : m.coeffs()) c *= inv;
  return m;
}

ScalarField to_physical(const ModalField& m) {
  const Grid& g = m.grid();
  std::vector<std::complex<double>> scratch = m.coeffs();  // c2r overwrites its input
  // Imaginary parts of the k = 0 and Nyquist modes carry no real signal.
  for (std::size_t j = 0; j < g.n2(); ++j) {
    scratch[j].imag(0.0);
    scratch[(g.n1() / 2) * g.n2() + j].imag(0.0);
  }
  ScalarField f(g);
  fftw_execute_dft_c2r(g.resources().backward, reinterpret_cast<fftw_complex*>(scratch.data()),
                       f.values().data());
  return f;
}

ModalField ddx1(const ModalField& m) {
  const Grid& g = m.grid();
  ModalField out(g);
  const std::size_t nyq = g.n1() / 2;
  for (std::size_t k = 1; k < nyq; ++k) {
    const std::complex<double> ik(0.0, static_cast<double>(k));
    const auto* src = m.mode(k);
    auto* dst = out.mode(k);
    for (std::size_t j = 0; j < g.n2(); ++j) dst[j] = ik * src[j];
  }
  return out;
}

ModalField ddx2(const ModalField& m) {
  const Grid& g = m.grid();
  ModalField out(g);
  const VerticalOperator& op = g.d2_first();
  for (std::size_t k = 0; k < g.modes(); ++k)
    op.apply_complex(reinterpret_cast<const double*>(m.mode(k)), reinterpret_cast<double*>(out.mode(k)));
  return out;
}

ScalarField ddx1(const ScalarField& f) { return to_physical(ddx1(to_modal(f))); }

ScalarField ddx2(const ScalarField& f) {
  const Grid& g = f.grid();
  ScalarField out(g);
  const VerticalOperator& op = g.d2_first();
  for (std::size_t i = 0; i < g.n1(); ++i) op.apply(f.column(i), out.column(i));
  return out;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += v[k];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

namespace {

// Row sums over x1 (left to right in i), weighted by the vertical trapezoid,
// then combined pairwise.
template <class Value>
double integrate_impl(const Grid& g, Value value) {
  const std::size_t n1 = g.n1();
  const std::size_t n2 = g.n2();
  std::vector<double> rows(n2, 0.0);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) rows[j] += value(i * n2 + j);
  const auto& w = g.vertical_weights();
  for (std::size_t j = 0; j < n2; ++j) rows[j] *= w[j];
  return pairwise_sum(rows.data(), n2) * g.dx1();
}

}  // namespace

double integrate(const ScalarField& f) {
  const double* v = f.values().data();
  return integrate_impl(f.grid(), [v](std::size_t k) { return v[k]; });
}

double integrate_product(const ScalarField& f, const ScalarField& g) {
  require_same(f.grid(), g.grid());
  const double* a = f.values().data();
  const double* b = g.values().data();
  return integrate_impl(f.grid(), [a, b](std::size_t k) { return a[k] * b[k]; });
}

double integrate_vertical(const Profile& p) {
  const auto& w = p.grid().vertical_weights();
  std::vector<double> t(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) t[j] = w[j] * p[j];
  return pairwise_sum(t.data(), t.size());
}

namespace {

double linf(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

// Squared L2 norms of all mixed derivatives, grouped by total order.
std::vector<double> derivative_energies(const ScalarField& f, int kmax) {
  std::vector<double> by_order(static_cast<std::size_t>(kmax) + 1, 0.0);
  ScalarField vert = f;  // d2^b f
  for (int b = 0; b <= kmax; ++b) {
    if (b > 0) vert = ddx2(vert);
    by_order[static_cast<std::size_t>(b)] += integrate_product(vert, vert);
    if (b == kmax) break;
    ModalField m = to_modal(vert);
    for (int a = 1; a + b <= kmax; ++a) {
      m = ddx1(m);
      const ScalarField d = to_physical(m);
      by_order[static_cast<std::size_t>(a + b)] += integrate_product(d, d);
    }
  }
  return by_order;
}

}  // namespace

double norm(const ScalarField& f, NormKind kind, int k) {
  switch (kind) {
    case NormKind::L2:
      return std::sqrt(std::max(0.0, integrate_product(f, f)));
    case NormKind::Hk:
      return norm_hk_all(f, k).back();
    case NormKind::Linf:
      return linf(f);
    case NormKind::W1inf:
      return std::max({linf(f), linf(ddx1(f)), linf(ddx2(f))});
  }
  throw std::invalid_argument("unknown norm kind");
}

std::vector<double> norm_hk_all(const ScalarField& f, int kmax) {
  if (kmax < 0 || kmax > 4) throw std::invalid_argument("H^k norm supports 0 <= k <= 4");
  const std::vector<double> e = derivative_energies(f, kmax);
  std::vector<double> out(e.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    acc += e[k];
    out[k] = std::sqrt(std::max(0.0, acc));
  }
  return out;
}

Profile x1_average(const ScalarField& f) {
  const ModalField m = to_modal(f);
  Profile p(f.grid());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = m(0, j).real();
  return p;
}

void dealias_in_place(ModalField& m) {
  const Grid& g = m.grid();
  for (std::size_t k = 0; k < g.modes(); ++k) {
    if (!is_dealiased_mode(g, k)) continue;
    std::fill(m.mode(k), m.mode(k) + g.n2(), std::complex<double>(0.0, 0.0));
  }
}

ModalField dealias(const ModalField& m) {
  ModalField out = m;
  dealias_in_place(out);
  return out;
}

}  // namespace stratlab
