#include "genusforge/zeta.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "genusforge/errors.hpp"

namespace genusforge {

namespace {

using Rat = boost::multiprecision::cpp_rational;
using RPoly = std::vector<Rat>;  // constant first

void trim(RPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

RPoly rem(RPoly a, const RPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rat c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  return a;
}

RPoly quot(RPoly a, const RPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  RPoly out(a.size() - b.size() + 1);
  while (a.size() >= b.size() && !a.empty()) {
    const Rat c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    out[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  return out;
}

RPoly gcd(RPoly a, RPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

RPoly squarefree_part(const RPoly& f) {
  RPoly df;
  for (std::size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * static_cast<long>(i));
  trim(df);
  if (df.empty()) return f;
  return quot(f, gcd(f, df));
}

std::vector<std::complex<double>> roots_of(const RPoly& f_in) {
  RPoly f = f_in;
  trim(f);
  const int n = static_cast<int>(f.size()) - 1;
  if (n < 1) return {};
  std::vector<long double> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = static_cast<long double>(f[i] / f[n]);
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -static_cast<double>(c[i]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<std::complex<double>> out;
  for (int k = 0; k < n; ++k) {
    std::complex<long double> z(es.eigenvalues()[k].real(), es.eigenvalues()[k].imag());
    for (int it = 0; it < 60; ++it) {
      std::complex<long double> v = c[n], dv = 0;
      for (int i = n - 1; i >= 0; --i) {
        dv = dv * z + v;
        v = v * z + c[i];
      }
      if (std::abs(dv) == 0) break;
      const std::complex<long double> step = v / dv;
      z -= step;
      if (std::abs(step) < 1e-30L) break;
    }
    out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return out;
}

}  // namespace

std::vector<BigInt> predict_counts(std::uint64_t q, const std::vector<BigInt>& a, int up_to) {
  const int deg = static_cast<int>(a.size()) - 1;
  std::vector<BigInt> S(up_to + 1, 0), N;
  for (int m = 1; m <= up_to; ++m) {
    BigInt s = m <= deg ? BigInt(-m) * a[m] : BigInt(0);
    for (int i = 1; i < m; ++i) {
      if (m - i <= deg) s -= a[m - i] * S[i];
    }
    S[m] = s;
    N.push_back(big_pow(q, static_cast<std::uint64_t>(m)) + 1 - s);
  }
  return N;
}

ZetaData lpolynomial_from_counts(std::uint64_t q, int g, const std::vector<std::int64_t>& counts) {
  if (g < 0) throw InvalidArgument("genus must be >= 0");
  if (static_cast<int>(counts.size()) < 2 * g) {
    throw InvalidArgument("need N_1..N_" + std::to_string(2 * g) + " for genus " + std::to_string(g));
  }
  ZetaData z;
  z.q = q;
  z.g = g;
  z.counts = counts;
  // Newton identities over all 2g counts; z.a is then rebuilt from a_0..a_g.
  std::vector<BigInt> S(2 * g + 1, 0), full(2 * g + 1, 0);
  full[0] = 1;
  for (int m = 1; m <= 2 * g; ++m) S[m] = big_pow(q, static_cast<std::uint64_t>(m)) + 1 - counts[m - 1];
  for (int k = 1; k <= 2 * g; ++k) {
    BigInt acc = 0;
    for (int i = 1; i <= k; ++i) acc += full[k - i] * S[i];
    if (acc % k != 0) {
      throw InconsistentCounts("Newton identity at degree " + std::to_string(k) + " is not integral");
    }
    full[k] = -acc / k;
  }
  z.functional_equation = true;
  for (int i = 0; i <= 2 * g; ++i) {
    if (full[2 * g - i] * big_pow(q, static_cast<std::uint64_t>(i)) !=
        big_pow(q, static_cast<std::uint64_t>(g)) * full[i]) {
      z.functional_equation = false;
    }
  }
  z.a.assign(full.begin(), full.begin() + g + 1);
  z.a.resize(2 * g + 1);
  for (int i = 0; i < g; ++i) z.a[2 * g - i] = big_pow(q, static_cast<std::uint64_t>(g - i)) * z.a[i];
  const auto predicted = predict_counts(q, z.a, static_cast<int>(counts.size()));
  for (std::size_t m = 0; m < counts.size(); ++m) {
    if (predicted[m] != counts[m]) {
      throw InconsistentCounts("L-polynomial predicts N_" + std::to_string(m + 1) + " = " +
                               predicted[m].str() + " but the count is " + std::to_string(counts[m]));
    }
  }
  // Reciprocal roots are the roots of T^{2g} L(1/T).
  RPoly rev(2 * g + 1);
  for (int k = 0; k <= 2 * g; ++k) rev[2 * g - k] = Rat(z.a[k]);
  z.roots = roots_of(squarefree_part(rev));
  z.max_root_deviation = 0;
  for (const auto& r : z.roots) {
    z.max_root_deviation = std::max(z.max_root_deviation, std::abs(std::norm(r) - static_cast<double>(q)));
  }
  z.roots_ok = z.max_root_deviation <= kRootTolerance;
  return z;
}

}  // namespace genusforge
