#include "dyadic/dirichlet/crest.hpp"

#include "dyadic/core/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace dyadic {

double CrestField::value(const Word& w) const {
  if (w.depth() > n) return 0.0;
  return value(static_cast<unsigned>(w.depth()), w.value_u64());
}

std::vector<double> CrestField::level(unsigned k) const {
  if (k > n) throw DomainError("CrestField::level: depth beyond the field");
  const auto first = values.begin() + static_cast<std::ptrdiff_t>(layer_index(k, 0));
  return {first, first + (std::ptrdiff_t{1} << k)};
}

CrestField solve_crest(unsigned n, const DirichletOptions& opt, const CrestField* warm) {
  if (n < 2 || n > 22) throw DomainError("solve_crest: n must lie in [2, 22]");
  if (!(opt.tol > 0)) throw DomainError("solve_crest: tolerance must be positive");
  CrestField f;
  f.n = n;
  f.tol = opt.tol;
  f.values.assign(layer_size(n), 0.0);
  if (warm && warm->n < n) {
    std::copy(warm->values.begin(), warm->values.begin() + static_cast<std::ptrdiff_t>(layer_size(warm->n - 1)),
              f.values.begin());
  }
  f.values[0] = 1.0;
  const DirichletStats st = solve_layered(f.values, 1, n - 1, opt);
  f.sweeps = st.sweeps;
  f.residual = st.residual;
  for (auto& x : f.values) x = std::clamp(x, 0.0, 1.0);
  return f;
}

std::vector<double> normalize_level(const CrestField& f, unsigned k) {
  if (k >= f.n) throw DomainError("normalize_level: level must be below n");
  std::vector<double> lv = f.level(k);
  const double s = std::accumulate(lv.begin(), lv.end(), 0.0);
  if (!(s > 0)) throw DegenerateLevel("normalize_level: level sum is zero");
  for (auto& x : lv) x /= s;
  return lv;
}

Extrapolation extrapolate_ratio2(const std::vector<std::pair<int, double>>& seq, std::size_t window) {
  if (seq.size() < 4) throw DomainError("extrapolate_ratio2: need at least 4 terms");
  const std::size_t w = std::clamp<std::size_t>(window, 4, seq.size());
  const std::size_t off = seq.size() - w;
  Eigen::MatrixXd A(static_cast<Eigen::Index>(w), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(w));
  for (std::size_t i = 0; i < w; ++i) {
    const auto [n, s] = seq[off + i];
    A(static_cast<Eigen::Index>(i), 0) = 1.0;
    A(static_cast<Eigen::Index>(i), 1) = -std::ldexp(1.0, -n);
    y(static_cast<Eigen::Index>(i)) = s;
  }
  const Eigen::Vector2d beta = A.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd r = y - A * beta;

  Extrapolation out;
  out.limit = beta(0);
  out.slope = beta(1);
  out.window = w;
  out.rms_residual = std::sqrt(r.squaredNorm() / static_cast<double>(w));
  out.max_residual = r.cwiseAbs().maxCoeff();
  bool up = true, down = true;
  for (std::size_t i = off + 1; i < seq.size(); ++i) {
    up = up && seq[i].second >= seq[i - 1].second;
    down = down && seq[i].second <= seq[i - 1].second;
  }
  if (!up && !down) {
    out.fit_warning = true;
    out.warning = "trailing terms are not monotone";
  }
  return out;
}

double esc_p3_convert(double x, ConvertDirection) {
  if (!(x > 0 && x < 1)) throw DomainError("esc_p3_convert: argument must lie in (0, 1)");
  // The map x -> 3(1 - x)/(3 + x) is its own inverse.
  return 3.0 * (1.0 - x) / (3.0 + x);
}

CrestPipeline run_crest_pipeline(unsigned max_depth, const DirichletOptions& opt, std::size_t window) {
  if (max_depth < 5) throw DomainError("run_crest_pipeline: need max_depth >= 5 for four level-2 terms");
  CrestPipeline out;
  std::vector<std::pair<int, double>> s0, s1, sum;
  std::array<std::vector<std::pair<int, double>>, 4> s2;
  CrestField prev;
  for (unsigned n = 2; n <= max_depth; ++n) {
    CrestField f = solve_crest(n, opt, n > 2 ? &prev : nullptr);
    CrestLevel lv;
    lv.n = n;
    lv.sweeps = f.sweeps;
    lv.residual = f.residual;
    lv.raw1 = {f.value(1, 0), f.value(1, 1)};
    const auto l1 = normalize_level(f, 1);
    lv.norm1 = {l1[0], l1[1]};
    s0.emplace_back(n, l1[0]);
    s1.emplace_back(n, l1[1]);
    sum.emplace_back(n, lv.raw1[0] + lv.raw1[1]);
    if (n >= 3) {
      const auto l2 = normalize_level(f, 2);
      for (int i = 0; i < 4; ++i) {
        lv.norm2[i] = l2[i];
        s2[i].emplace_back(n, l2[i]);
      }
    }
    out.levels.push_back(lv);
    prev = std::move(f);
  }
  out.esc0 = extrapolate_ratio2(s0, window);
  out.esc1 = extrapolate_ratio2(s1, window);
  out.raw_sum = extrapolate_ratio2(sum, window);
  for (int i = 0; i < 4; ++i) out.esc2[i] = extrapolate_ratio2(s2[i], window);
  out.p3 = esc_p3_convert(out.esc0.limit, ConvertDirection::EscToP3);
  out.last = std::move(prev);
  return out;
}

void write_crest_csv(std::ostream& os, const CrestField& f, unsigned max_depth) {
  os << "depth,label,value,normalized_value\n";
  char buf[64];
  const unsigned top = std::min(f.n - 1, max_depth);
  for (unsigned d = 0; d <= top; ++d) {
    const auto norm = d == 0 ? std::vector<double>{1.0} : normalize_level(f, d);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << d); ++v) {
      os << d << ',' << Word::from_value(v, d).str() << ',';
      std::snprintf(buf, sizeof buf, "%.17g", f.value(d, v));
      os << buf << ',';
      std::snprintf(buf, sizeof buf, "%.17g", norm[v]);
      os << buf << '\n';
    }
  }
}

}  // namespace dyadic
