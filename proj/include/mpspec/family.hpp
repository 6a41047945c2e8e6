// Parameterized matrix-polynomial families: the family file parser,
// coefficient evaluation at a parameter point, and lambda-evaluation of the
// resulting matrix polynomial.
//
// Family file format (UTF-8 text, '#' starts a comment):
//
//   n = 2
//   d = 1
//   m = 2
//   coeff 0 {
//     t1 + 2*t2, 1 - 0.5i
//     0,         t1^2
//   }
//   coeff 1 {
//     1, 0
//     0, 1
//   }
//
// Keys n, d, m must precede the coeff blocks; exactly d+1 blocks follow in
// order k = 0..d, each holding n rows of n comma-separated expressions.
#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mpspec/expr.hpp"
#include "mpspec/matrix.hpp"
#include "mpspec/rng.hpp"

namespace mpspec {

struct ParamPoint {
  std::vector<double> coords;

  ParamPoint() = default;
  explicit ParamPoint(std::vector<double> c) : coords(std::move(c)) {}

  int size() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords[i]; }

  double norm() const {
    double s = 0.0;
    for (double x : coords) s += x * x;
    return std::sqrt(s);
  }

  friend ParamPoint operator+(ParamPoint a, const ParamPoint& b) {
    for (size_t i = 0; i < a.coords.size(); ++i) a.coords[i] += b.coords[i];
    return a;
  }
  friend ParamPoint operator-(ParamPoint a, const ParamPoint& b) {
    for (size_t i = 0; i < a.coords.size(); ++i) a.coords[i] -= b.coords[i];
    return a;
  }
  friend ParamPoint operator*(double s, ParamPoint a) {
    for (double& x : a.coords) x *= s;
    return a;
  }
};

inline double distance(const ParamPoint& a, const ParamPoint& b) { return (a - b).norm(); }

struct MatrixPolynomial {
  int n = 0;
  int d = 0;
  std::vector<ComplexMatrix> coeffs;  // index k = 0..d
  bool leading_singular = false;      // set for flagged non-monic evaluations

  // Matrix-valued Horner evaluation.
  ComplexMatrix evaluate_at(cplx lambda) const {
    ComplexMatrix acc = coeffs[d];
    for (int k = d - 1; k >= 0; --k) acc = acc * lambda + coeffs[k];
    return acc;
  }

  // (1/j!) P^(j)(lambda) = sum_{k>=j} C(k,j) A_k lambda^{k-j}.
  ComplexMatrix scaled_derivative(cplx lambda, int j) const {
    ComplexMatrix acc(n, n);
    for (int k = d; k >= j; --k) {
      double binom = 1.0;
      for (int i = 0; i < j; ++i) binom *= double(k - i) / double(j - i);
      acc = acc * lambda + binom * coeffs[k];
    }
    return acc;
  }
};

struct Family {
  int n = 0, d = 0, m = 0;
  std::vector<std::vector<PolyExpr>> coeff_maps;  // [k][i*n+j], k = 0..d
  bool monic_flag = false;

  const PolyExpr& entry(int k, int i, int j) const { return coeff_maps[k][i * n + j]; }

  // Structurally real coefficients make sigma(u) conjugate-symmetric for
  // real u; used by the symmetry detection path.
  bool structurally_real() const {
    for (const auto& mat : coeff_maps)
      for (const PolyExpr& e : mat)
        if (!e.has_real_coeffs()) return false;
    return true;
  }

  int max_coeff_degree() const {
    int deg = 0;
    for (const auto& mat : coeff_maps)
      for (const PolyExpr& e : mat) deg = std::max(deg, e.total_degree());
    return deg;
  }
};

// |det A_d(u)| below this scale-aware bound flags a non-monic evaluation.
inline bool leading_coefficient_singular(const ComplexMatrix& ad) {
  double f = ad.frobenius_norm();
  double guard = 1e-10 * std::max(1.0, std::pow(f, ad.rows()));
  return std::abs(lu_det(ad)) < guard;
}

inline MatrixPolynomial evaluate_coeffs(const Family& f, const ParamPoint& u) {
  if (u.size() != f.m)
    config_error("evaluate_coeffs: parameter point has length " + std::to_string(u.size()) +
                 ", family expects m=" + std::to_string(f.m));
  MatrixPolynomial p;
  p.n = f.n;
  p.d = f.d;
  p.coeffs.reserve(f.d + 1);
  for (int k = 0; k <= f.d; ++k) {
    ComplexMatrix a(f.n, f.n);
    for (int i = 0; i < f.n; ++i)
      for (int j = 0; j < f.n; ++j) a(i, j) = f.entry(k, i, j).eval(u.coords);
    p.coeffs.push_back(std::move(a));
  }
  if (f.monic_flag) {
    p.coeffs[f.d] = ComplexMatrix::identity(f.n);  // exact by construction
  } else if (leading_coefficient_singular(p.coeffs[f.d])) {
    p.leading_singular = true;
  }
  return p;
}

namespace detail {

struct FamilyLine {
  std::string text;
  int number;  // 1-based
};

inline std::vector<FamilyLine> significant_lines(std::string_view doc) {
  std::vector<FamilyLine> out;
  int number = 0;
  size_t start = 0;
  while (start <= doc.size()) {
    size_t end = doc.find('\n', start);
    std::string_view raw =
        doc.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++number;
    std::string line(raw);
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a != std::string::npos) {
      size_t b = line.find_last_not_of(" \t\r");
      out.push_back({line.substr(a, b - a + 1), number});
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace detail

inline Family parse_family(std::string_view document) {
  auto lines = detail::significant_lines(document);
  size_t idx = 0;
  std::optional<int> n, d, m;

  auto parse_int_kv = [&](const std::string& line, int number) -> std::optional<std::pair<char, int>> {
    std::istringstream ss(line);
    std::string key, eq;
    long value;
    if (!(ss >> key >> eq >> value) || eq != "=") return std::nullopt;
    std::string rest;
    if (ss >> rest) return std::nullopt;
    if (key != "n" && key != "d" && key != "m") return std::nullopt;
    if (value < 1 || value > 1000)
      config_error("line " + std::to_string(number) + ": " + key + " out of range");
    return std::make_pair(key[0], static_cast<int>(value));
  };

  while (idx < lines.size()) {
    auto kv = parse_int_kv(lines[idx].text, lines[idx].number);
    if (!kv) break;
    switch (kv->first) {
      case 'n': n = kv->second; break;
      case 'd': d = kv->second; break;
      case 'm': m = kv->second; break;
    }
    ++idx;
  }
  if (!n || !d || !m)
    config_error("family file: header must declare n, d and m before coeff blocks");

  Family fam;
  fam.n = *n;
  fam.d = *d;
  fam.m = *m;
  fam.coeff_maps.assign(fam.d + 1, {});

  for (int k = 0; k <= fam.d; ++k) {
    if (idx >= lines.size())
      config_error("family file: expected coeff block " + std::to_string(k) +
                   " (need d+1 = " + std::to_string(fam.d + 1) + " blocks)");
    const auto& head = lines[idx];
    std::istringstream ss(head.text);
    std::string word, brace;
    long declared = -1;
    if (!(ss >> word >> declared >> brace) || word != "coeff" || brace != "{")
      config_error("line " + std::to_string(head.number) + ": expected 'coeff " +
                   std::to_string(k) + " {'");
    if (declared != k)
      config_error("line " + std::to_string(head.number) + ": coeff blocks must appear in order; "
                   "expected index " + std::to_string(k) + ", found " + std::to_string(declared));
    ++idx;

    std::vector<PolyExpr>& mat = fam.coeff_maps[k];
    mat.reserve(fam.n * fam.n);
    int rows_read = 0;
    while (idx < lines.size() && lines[idx].text != "}") {
      const auto& row = lines[idx];
      if (rows_read >= fam.n)
        config_error("line " + std::to_string(row.number) + ": coeff " + std::to_string(k) +
                     " has more than n=" + std::to_string(fam.n) + " rows");
      // Split on commas; parentheses cannot nest commas in this grammar.
      std::vector<std::pair<std::string, int>> entries;  // text, column offset
      size_t start = 0;
      for (size_t c = 0; c <= row.text.size(); ++c) {
        if (c == row.text.size() || row.text[c] == ',') {
          entries.emplace_back(row.text.substr(start, c - start), static_cast<int>(start));
          start = c + 1;
        }
      }
      if (static_cast<int>(entries.size()) != fam.n)
        config_error("line " + std::to_string(row.number) + ": coeff " + std::to_string(k) +
                     " row has " + std::to_string(entries.size()) + " entries, expected n=" +
                     std::to_string(fam.n));
      for (auto& [text, col] : entries)
        mat.push_back(parse_expression(text, fam.m, row.number, col));
      ++rows_read;
      ++idx;
    }
    if (idx >= lines.size())
      config_error("family file: coeff " + std::to_string(k) + " block not closed with '}'");
    if (rows_read != fam.n)
      config_error("line " + std::to_string(lines[idx].number) + ": coeff " + std::to_string(k) +
                   " has " + std::to_string(rows_read) + " rows, expected n=" +
                   std::to_string(fam.n));
    ++idx;  // consume '}'
  }
  if (idx < lines.size())
    config_error("line " + std::to_string(lines[idx].number) +
                 ": unexpected content after the final coeff block");

  // monic_flag by structural inspection of the degree-d coefficient.
  fam.monic_flag = true;
  for (int i = 0; i < fam.n && fam.monic_flag; ++i)
    for (int j = 0; j < fam.n; ++j) {
      const PolyExpr& e = fam.entry(fam.d, i, j);
      if (!e.is_constant(i == j ? cplx(1.0) : cplx(0.0))) {
        fam.monic_flag = false;
        break;
      }
    }
  return fam;
}

// Samples the closed ball around u and reports whether every sampled
// coefficient tuple is entrywise real, or every one is Hermitian.
struct RealHermitianDetection {
  bool real = true;
  bool hermitian = true;
  bool either() const { return real || hermitian; }
};

inline RealHermitianDetection detect_real_or_hermitian(const Family& f, const ParamPoint& u,
                                                       double eps, std::uint64_t seed = 0) {
  std::vector<ParamPoint> samples{u};
  for (int i = 0; i < f.m; ++i) {
    for (double s : {-1.0, 1.0}) {
      ParamPoint v = u;
      v.coords[i] += s * eps;
      samples.push_back(v);
    }
  }
  Stream stream(seed, "real-hermitian-detect");
  for (int k = 0; k < 4; ++k) {
    ParamPoint v = u;
    auto b = stream.ball_point(f.m, eps);
    for (int i = 0; i < f.m; ++i) v.coords[i] += b[i];
    samples.push_back(v);
  }

  RealHermitianDetection det;
  for (const ParamPoint& v : samples) {
    MatrixPolynomial p = evaluate_coeffs(f, v);
    for (const ComplexMatrix& a : p.coeffs) {
      for (int i = 0; i < f.n; ++i) {
        for (int j = 0; j < f.n; ++j) {
          if (std::abs(a(i, j).imag()) > 1e-12) det.real = false;
          if (std::abs(a(i, j) - std::conj(a(j, i))) > 1e-12) det.hermitian = false;
        }
      }
      if (!det.real && !det.hermitian) return det;
    }
  }
  return det;
}

}  // namespace mpspec
