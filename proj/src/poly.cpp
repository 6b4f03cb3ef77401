#include "remezlab/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace remezlab {

namespace {

void monomials_of_degree(int n, int d, int var, Exponent& cur, std::vector<Exponent>& out) {
  if (var == n - 1) {
    cur[var] = d;
    out.push_back(cur);
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur[var] = e;
    monomials_of_degree(n, d - e, var + 1, cur, out);
  }
  cur[var] = 0;
}

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

std::vector<Exponent> monomials(int n, int k) {
  std::vector<Exponent> out;
  Exponent cur(n, 0);
  for (int d = 0; d <= k; ++d) monomials_of_degree(n, d, 0, cur, out);
  return out;
}

MultiPoly::MultiPoly(int n, const std::vector<Term>& terms, PolyLimits limits) : n_(n) {
  if (n < 1) throw std::invalid_argument("MultiPoly: dimension must be >= 1");
  if (n > limits.max_dimension)
    throw std::invalid_argument("MultiPoly: dimension exceeds the configured cap");
  std::map<Exponent, double> merged;
  for (const Term& t : terms) {
    if (static_cast<int>(t.exponent.size()) != n)
      throw std::invalid_argument("MultiPoly: exponent length mismatch");
    if (std::any_of(t.exponent.begin(), t.exponent.end(), [](int e) { return e < 0; }))
      throw std::invalid_argument("MultiPoly: negative exponent");
    merged[t.exponent] += t.coeff;
  }
  for (const auto& [e, c] : merged)
    if (c != 0.0) degree_ = std::max(degree_, total_degree(e));
  if (degree_ > limits.max_degree)
    throw std::invalid_argument("MultiPoly: degree exceeds the configured cap");
  if (degree_ < 0) return;
  basis_ = monomials(n, degree_);
  coeffs_ = Vector::Zero(static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t m = 0; m < basis_.size(); ++m) {
    auto it = merged.find(basis_[m]);
    if (it != merged.end()) coeffs_[static_cast<Eigen::Index>(m)] = it->second;
  }
}

MultiPoly MultiPoly::constant(int n, double c) { return MultiPoly(n, {{Exponent(n, 0), c}}); }

MultiPoly MultiPoly::variable(int n, int index) {
  if (index < 0 || index >= n) throw std::invalid_argument("MultiPoly::variable: bad index");
  Exponent e(n, 0);
  e[index] = 1;
  return MultiPoly(n, {{e, 1.0}});
}

MultiPoly MultiPoly::univariate(const std::vector<double>& coeffs) {
  std::vector<Term> terms;
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    terms.push_back({{static_cast<int>(j)}, coeffs[j]});
  return MultiPoly(1, terms);
}

int MultiPoly::degree() const {
  if (degree_ < 0) throw std::domain_error("MultiPoly: degree of the zero polynomial");
  return degree_;
}

std::vector<Term> MultiPoly::terms() const {
  std::vector<Term> out;
  for (std::size_t m = 0; m < basis_.size(); ++m) {
    const double c = coeffs_[static_cast<Eigen::Index>(m)];
    if (c != 0.0) out.push_back({basis_[m], c});
  }
  return out;
}

MultiPoly MultiPoly::derivative(int var) const {
  if (var < 0 || var >= n_) throw std::invalid_argument("MultiPoly::derivative: bad variable");
  std::vector<Term> out;
  for (const Term& t : terms()) {
    if (t.exponent[var] == 0) continue;
    Term d = t;
    d.coeff *= d.exponent[var];
    d.exponent[var] -= 1;
    out.push_back(std::move(d));
  }
  return MultiPoly(n_, out, {std::max(degree_, 0), n_});
}

std::vector<double> MultiPoly::coefficients() const {
  if (n_ != 1) throw std::invalid_argument("MultiPoly::coefficients: not univariate");
  std::vector<double> out(static_cast<std::size_t>(std::max(degree_, 0) + 1), 0.0);
  for (const Term& t : terms()) out[static_cast<std::size_t>(t.exponent[0])] = t.coeff;
  return out;
}

bool MultiPoly::operator==(const MultiPoly& other) const {
  if (n_ != other.n_ || degree_ != other.degree_) return false;
  return coeffs_ == other.coeffs_;
}

double eval(const MultiPoly& p, const Vector& x) { return p(x); }

std::complex<double> eval(const MultiPoly& p, const CVector& z) { return p(z); }

MultiPoly chebyshev_poly(int k) {
  if (k < 0) throw std::invalid_argument("chebyshev_poly: degree must be nonnegative");
  std::vector<double> prev{1.0};
  std::vector<double> cur{0.0, 1.0};
  if (k == 0) return MultiPoly::univariate(prev);
  for (int j = 1; j < k; ++j) {
    std::vector<double> next(cur.size() + 1, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2.0 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return MultiPoly::univariate(cur);
}

CoeffLaw parse_coeff_law(std::string_view name) {
  if (name == "normal") return CoeffLaw::Normal;
  if (name == "uniform") return CoeffLaw::Uniform;
  if (name == "sparse") return CoeffLaw::Sparse;
  throw std::invalid_argument("unknown coefficient law: " + std::string(name));
}

std::string_view to_string(CoeffLaw law) {
  switch (law) {
    case CoeffLaw::Normal: return "normal";
    case CoeffLaw::Uniform: return "uniform";
    case CoeffLaw::Sparse: return "sparse";
  }
  return "normal";
}

MultiPoly random_poly(int n, int k, std::uint64_t seed, CoeffLaw law) {
  if (n < 1 || k < 0) throw std::invalid_argument("random_poly: need n >= 1 and k >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::bernoulli_distribution keep(0.5);
  const auto basis = monomials(n, k);
  for (;;) {
    std::vector<Term> terms;
    for (const Exponent& e : basis) {
      double c = 0.0;
      switch (law) {
        case CoeffLaw::Normal: c = gauss(rng); break;
        case CoeffLaw::Uniform: c = uniform(rng); break;
        case CoeffLaw::Sparse: c = keep(rng) ? gauss(rng) : 0.0; break;
      }
      if (c != 0.0) terms.push_back({e, c});
    }
    MultiPoly p(n, terms);
    if (!p.is_zero()) return p;
  }
}

void to_json(nlohmann::json& j, const MultiPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const Term& t : p.terms()) terms.push_back({{"exp", t.exponent}, {"c", t.coeff}});
  j = nlohmann::json{{"n", p.dimension()}, {"terms", terms}};
}

MultiPoly poly_from_json(const nlohmann::json& j) {
  std::vector<Term> terms;
  for (const auto& t : j.at("terms"))
    terms.push_back({t.at("exp").get<Exponent>(), t.at("c").get<double>()});
  return MultiPoly(j.at("n").get<int>(), terms);
}

}  // namespace remezlab
