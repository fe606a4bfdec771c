#include "crossratio/pf.hpp"

#include <algorithm>
#include <complex>

#include "crossratio/errors.hpp"
#include "crossratio/roots.hpp"

namespace crossratio {

namespace {

template <class T>
Vec<T> normalize_max_abs(Vec<T> v) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (abs(v[k]) < abs(v[i])) k = i;
  T pivot = v[k];
  for (auto& x : v) x /= pivot;
  return v;
}

/// Eigenvector of [[a,b],[c,d]] for eigenvalue mu (mu simple).
Vec<QuadExt> eigvec2(const Rational& a, const Rational& b, const Rational& c, const Rational& d, const QuadExt& mu) {
  Vec<QuadExt> v{QuadExt(b), mu - QuadExt(a)};
  if (v[0] == QuadExt(0) && v[1] == QuadExt(0)) v = {mu - QuadExt(d), QuadExt(c)};
  return normalize_max_abs(std::move(v));
}

}  // namespace

std::optional<unsigned> primitivity(const Matrix<Rational>& m) {
  std::size_t n = m.dim();
  std::vector<char> pattern(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) < 0) throw DomainError("primitivity requires a nonnegative matrix");
      pattern[i * n + j] = m(i, j) > 0;
    }
  const unsigned bound = static_cast<unsigned>((n - 1) * (n - 1) + 1);
  std::vector<char> power = pattern;
  for (unsigned k = 1; k <= bound; ++k) {
    if (std::all_of(power.begin(), power.end(), [](char x) { return x != 0; })) return k;
    std::vector<char> next(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (power[i * n + l])
          for (std::size_t j = 0; j < n; ++j) next[i * n + j] |= pattern[l * n + j];
    power = std::move(next);
  }
  return std::nullopt;
}

QuadEigen quad_eigen(const Matrix<Rational>& m) {
  if (m.rows() != 2 || m.cols() != 2) throw ValidationError("quad_eigen requires a 2x2 matrix");
  const Rational &a = m(0, 0), &b = m(0, 1), &c = m(1, 0), &d = m(1, 1);
  Rational tr = a + d, det = a * d - b * c;
  Rational disc = tr * tr - 4 * det;
  if (disc <= 0 || tr == 0) {
    throw HypothesisViolation("2x2 matrix lacks a dominant real eigenvalue (trace " + tr.get_str() + ", det " +
                              det.get_str() + ")");
  }
  QuadExt root = QuadExt::sqrt_of(disc);
  QuadExt half(Rational(1, 2));
  QuadExt mu = tr > 0 ? (QuadExt(tr) + root) * half : (QuadExt(tr) - root) * half;
  QuadExt nu = QuadExt(tr) - mu;
  QuadEigen e;
  e.eigenvalue = mu;
  e.lambda = abs(mu);
  e.second = nu;
  e.right = eigvec2(a, b, c, d, mu);
  e.left = eigvec2(a, c, b, d, mu);
  e.gap = abs(nu) / e.lambda;
  return e;
}

namespace {

/// Column 0 of adj(M - tI) as polynomials in t, by interpolation at
/// t = 0..n-1 of exact minors.
std::vector<RationalPolynomial> adjugate_column(const Matrix<Rational>& m) {
  std::size_t n = m.dim();
  std::vector<std::vector<Rational>> samples(n, std::vector<Rational>(n));
  for (std::size_t s = 0; s < n; ++s) {
    Matrix<Rational> shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= Rational(static_cast<long>(s));
    for (std::size_t col = 0; col < n; ++col) {
      Matrix<Rational> minor(n - 1, n - 1);
      for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0, jj = 0; j < n; ++j) {
          if (j == col) continue;
          minor(i - 1, jj++) = shifted(i, j);
        }
      Rational det = n == 1 ? Rational(1) : determinant(minor);
      samples[col][s] = (col % 2 == 0) ? det : Rational(-det);
    }
  }
  std::vector<Rational> nodes;
  for (std::size_t s = 0; s < n; ++s) nodes.emplace_back(static_cast<long>(s));
  std::vector<RationalPolynomial> out;
  for (std::size_t col = 0; col < n; ++col) out.push_back(interpolate(nodes, samples[col]));
  return out;
}

Vec<Enclosure> cofactor_eigenvector(const Matrix<Rational>& m, const Enclosure& lambda) {
  auto column = adjugate_column(m);
  Vec<Enclosure> v;
  for (const auto& poly : column) v.push_back(poly(lambda));
  std::size_t k = 0;
  double best = -1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double x = std::abs(v[i].to_bits(40).to_double());
    if (x > best) {
      best = x;
      k = i;
    }
  }
  Enclosure pivot = v[k];
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (i == k) ? Enclosure(Rational(1)) : v[i] / pivot;
  return v;
}

struct CQ {
  Rational re, im;
};
CQ operator-(const CQ& x, const CQ& y) { return {x.re - y.re, x.im - y.im}; }
CQ operator*(const CQ& x, const CQ& y) { return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re}; }
Rational norm2(const CQ& x) { return x.re * x.re + x.im * x.im; }

std::vector<std::complex<long double>> durand_kerner(const RationalPolynomial& p) {
  auto n = static_cast<std::size_t>(p.degree());
  std::vector<long double> c;
  for (const auto& x : p.coeffs()) c.push_back(static_cast<long double>(x.get_d()));
  long double bound = static_cast<long double>(root_bound(p).get_d());
  auto eval = [&](std::complex<long double> z) {
    std::complex<long double> acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
  std::vector<std::complex<long double>> z(n);
  std::complex<long double> seed(0.4L, 0.9L), w = 1;
  for (std::size_t k = 0; k < n; ++k) {
    z[k] = bound * w;
    w *= seed;
  }
  for (int iter = 0; iter < 2000; ++iter) {
    long double moved = 0;
    for (std::size_t k = 0; k < n; ++k) {
      std::complex<long double> den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) den *= z[k] - z[j];
      std::complex<long double> step = eval(z[k]) / den;
      z[k] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-30L * bound) break;
  }
  return z;
}

Rational sqrt_hi(const Rational& x) { return bounds::sqrt(x, 80).second; }
Rational sqrt_lo(const Rational& x) { return bounds::sqrt(x, 80).first; }

}  // namespace

namespace detail {

Enclosure second_modulus(const RationalPolynomial& p, const Enclosure& leading) {
  auto n = static_cast<std::size_t>(p.degree());
  if (n <= 1) return Enclosure(Rational(0));
  auto approx = durand_kerner(p);
  std::vector<CQ> z;
  for (const auto& a : approx) {
    Rational re(static_cast<double>(a.real())), im(static_cast<double>(a.imag()));
    z.push_back({re, im});
  }
  // Weierstrass corrections W_i = p(z_i) / prod_{j != i} (z_i - z_j); every
  // root lies in the union of disks D(z_i, n|W_i|), and a connected component
  // of k disks holds exactly k roots.
  std::vector<Rational> radius(n);
  for (std::size_t i = 0; i < n; ++i) {
    CQ val{0, 0};
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
      val = val * z[i];
      val.re += *it;
    }
    CQ den{1, 0};
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) den = den * (z[i] - z[j]);
    Rational dn = norm2(den);
    if (dn == 0) throw HypothesisViolation("root approximations collide; spectrum not certified");
    radius[i] = Rational(static_cast<long>(n)) * sqrt_hi(norm2(val) / dn);
  }
  auto isolated = [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Rational sep = radius[i] + radius[j];
      if (norm2(z[i] - z[j]) <= sep * sep) return false;
    }
    return true;
  };
  Rational mid = leading.midpoint();
  std::size_t lead = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (norm2(z[i] - CQ{mid, 0}) < norm2(z[lead] - CQ{mid, 0})) lead = i;
  // λ lies in some disk; if the segment enclosing it misses every other disk,
  // it lies in the isolated leading one.
  auto misses = [&](std::size_t j) {
    Rational dist2;
    if (leading.lo() <= z[j].re && z[j].re <= leading.hi()) dist2 = z[j].im * z[j].im;
    else dist2 = std::min(norm2(z[j] - CQ{leading.lo(), 0}), norm2(z[j] - CQ{leading.hi(), 0}));
    return dist2 > radius[j] * radius[j];
  };
  bool separated = isolated(lead);
  for (std::size_t j = 0; j < n && separated; ++j)
    if (j != lead) separated = misses(j);
  if (!separated) {
    throw HypothesisViolation("leading eigenvalue cannot be separated from the rest of the spectrum");
  }
  Rational upper = 0, lower = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == lead) continue;
    upper = std::max(upper, Rational(sqrt_hi(norm2(z[i])) + radius[i]));
    if (isolated(i)) lower = std::max(lower, Rational(sqrt_lo(norm2(z[i])) - radius[i]));
  }
  return Enclosure(lower, upper);
}

}  // namespace detail

PFData pf_data(const Matrix<Rational>& m) {
  m.require_square("pf_data");
  PFData pf;
  if (m.dim() == 2) {
    QuadEigen e = quad_eigen(m);
    pf.lambda = e.lambda.to_enclosure();
    for (const auto& x : e.right) pf.right.push_back(x.to_enclosure());
    for (const auto& x : e.left) pf.left.push_back(x.to_enclosure());
    pf.gap = e.gap.to_enclosure();
    pf.exact = std::move(e);
    return pf;
  }
  if (!primitivity(m)) throw HypothesisViolation("matrix is not primitive; Perron-Frobenius data undefined");
  if (m.dim() == 1) {
    pf.lambda = Enclosure(m(0, 0));
    pf.right = pf.left = {Enclosure(Rational(1))};
    pf.gap = Enclosure(Rational(0));
    return pf;
  }
  RationalPolynomial chi = char_poly(m);
  auto roots = isolate_real_roots(chi);
  if (roots.empty()) throw HypothesisViolation("no real eigenvalue");
  pf.lambda = roots.back();
  pf.right = cofactor_eigenvector(m, pf.lambda);
  pf.left = cofactor_eigenvector(m.transpose(), pf.lambda);
  RationalPolynomial sq = squarefree_part(chi);
  Enclosure lam = pf.lambda.to_bits(100);
  Enclosure second = detail::second_modulus(sq, lam);
  Rational gap_hi = second.hi() / lam.lo();
  if (gap_hi >= 1) throw HypothesisViolation("spectral gap not certified below 1");
  pf.gap = Enclosure(second.lo() / lam.hi(), gap_hi);
  return pf;
}

QuadExt projection_coeff(const QuadEigen& eig, const Vec<QuadExt>& u, const std::optional<Vec<QuadExt>>& reference) {
  const Vec<QuadExt>& r = reference ? *reference : eig.right;
  QuadExt denom = dot(eig.left, r);
  if (denom == QuadExt(0)) throw DomainError("reference direction is orthogonal to the left eigenvector");
  return dot(eig.left, u) / denom;
}

Real projection_coeff(const PFData& pf, const Vec<QuadExt>& u, const std::optional<Vec<QuadExt>>& reference) {
  if (pf.exact) return Real(projection_coeff(*pf.exact, u, reference));
  auto pair = [&](const Vec<QuadExt>& x) {
    if (x.size() != pf.left.size()) throw ValidationError("vector dimension does not match the matrix");
    Enclosure s(Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i) s = s + pf.left[i] * x[i].to_enclosure();
    return s;
  };
  Enclosure num = pair(u);
  Enclosure den(Rational(0));
  if (reference) {
    den = pair(*reference);
  } else {
    for (std::size_t i = 0; i < pf.right.size(); ++i) den = den + pf.left[i] * pf.right[i];
  }
  return Real(num / den);
}

bool residual_certified(const Matrix<Rational>& m, const PFData& pf, unsigned bits) {
  std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    Enclosure r = -(pf.lambda * pf.right[i]);
    Enclosure l = -(pf.lambda * pf.left[i]);
    for (std::size_t j = 0; j < n; ++j) {
      r = r + Enclosure(m(i, j)) * pf.right[j];
      l = l + Enclosure(m(j, i)) * pf.left[j];
    }
    Enclosure rr = r.to_bits(bits), ll = l.to_bits(bits);
    if (!rr.contains(0) || !ll.contains(0)) return false;
  }
  return true;
}

}  // namespace crossratio
