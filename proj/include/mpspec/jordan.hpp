// Jordan structure via companion linearization: rank sequences of powers of
// (lambda0 I - C), block-size partitions from the telescoping nullity
// identity, Jordan chains by a staircase over kernel bases, Jordan pairs
// (X, J), and sample-based parameter stratification.
//
// Eigenvalue estimation for a raw matrix C runs through a long-double
// determinant interpolation followed by a sigma_min refinement of each
// cluster mean; double-precision determinants alone lose multiple
// eigenvalues once the similarity conditioning reaches ~1e3. Rank cuts are
// placed at the largest singular-value gap inside the window the claimed
// multiplicity allows, and a thin gap marks the result "undetermined"
// instead of guessing.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mpspec/pattern_search.hpp"
#include "mpspec/spectral.hpp"
#include "mpspec/svd.hpp"

namespace mpspec {

struct RankSequence {
  cplx eigenvalue;
  std::vector<int> ranks;  // r(j), j = 1..; stops when N - r = multiplicity
  int algebraic_multiplicity = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  bool determined = true;
};

struct EigenStructure {
  cplx value;
  int multiplicity = 0;
  std::vector<int> partition;  // nonincreasing block sizes, sums to multiplicity
  bool determined = true;
};

struct JordanSignature {
  std::vector<EigenStructure> eigenvalues;
  int linear_size = 0;  // dn

  bool determined() const {
    for (const auto& e : eigenvalues)
      if (!e.determined) return false;
    return true;
  }

  // Canonical text ignores eigenvalue positions so nodes with the same
  // block structure compare equal across a stratum.
  std::string canonical_text() const {
    if (!determined()) return "undetermined";
    std::vector<std::string> parts;
    for (const auto& e : eigenvalues) {
      std::string p = "[";
      for (size_t i = 0; i < e.partition.size(); ++i) {
        if (i) p += ",";
        p += std::to_string(e.partition[i]);
      }
      p += "]";
      parts.push_back(p);
    }
    std::sort(parts.begin(), parts.end(), [](const std::string& a, const std::string& b) {
      if (a.size() != b.size()) return a.size() > b.size();
      return a > b;
    });
    std::string out = "k=" + std::to_string(eigenvalues.size()) + ";";
    for (const std::string& p : parts) out += p;
    return out;
  }

  std::uint64_t hash() const { return fnv1a64(canonical_text()); }
};

namespace detail {

// Characteristic polynomial det(zI - C) sampled in long double on an
// adaptively tightened circle. Double-precision determinants are not enough
// here: their roundoff, amplified like the 1/mult power, splits multiple
// roots past clustering range once cond reaches ~1e3.
inline ScalarPoly char_poly(const ComplexMatrix& c) {
  int n = c.rows();
  long double rho = 1.0L + static_cast<long double>(c.frobenius_norm());
  const long double two_pi = 6.283185307179586476925286766559L;

  ScalarPoly out;
  for (int pass = 0; pass < 4; ++pass) {
    int nodes = n + 1;
    std::vector<std::complex<long double>> values(nodes);
    for (int j = 0; j < nodes; ++j) {
      long double ang = two_pi * j / nodes;
      std::complex<long double> z(rho * std::cos(ang), rho * std::sin(ang));
      std::vector<std::complex<long double>> lu(static_cast<size_t>(n) * n);
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          lu[r * n + s] = std::complex<long double>(-c(r, s).real(), -c(r, s).imag());
      for (int r = 0; r < n; ++r) lu[r * n + r] += z;
      // Inline LU in long double.
      std::complex<long double> det = 1.0L;
      for (int k = 0; k < n; ++k) {
        int piv = k;
        long double bestv = std::abs(lu[k * n + k]);
        for (int i = k + 1; i < n; ++i) {
          long double v = std::abs(lu[i * n + k]);
          if (v > bestv) {
            bestv = v;
            piv = i;
          }
        }
        if (bestv == 0.0L) {
          det = 0.0L;
          break;
        }
        if (piv != k) {
          for (int jj = 0; jj < n; ++jj) std::swap(lu[k * n + jj], lu[piv * n + jj]);
          det = -det;
        }
        det *= lu[k * n + k];
        for (int i = k + 1; i < n; ++i) {
          std::complex<long double> f = lu[i * n + k] / lu[k * n + k];
          for (int jj = k + 1; jj < n; ++jj) lu[i * n + jj] -= f * lu[k * n + jj];
        }
      }
      values[j] = det;
    }
    // Inverse DFT in long double.
    out.coeffs.assign(n + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
      std::complex<long double> acc = 0.0L;
      for (int j = 0; j < nodes; ++j) {
        long double ang = -two_pi * j * k / nodes;
        acc += values[j] * std::complex<long double>(std::cos(ang), std::sin(ang));
      }
      acc /= static_cast<long double>(nodes) * std::pow(rho, static_cast<long double>(k));
      out.coeffs[k] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    }
    out.coeffs[n] = 1.0;  // monic by construction

    RootMultiset probe = aberth_roots(out, 1e-6, 400);
    long double rmax = 0.0L;
    for (cplx z : probe.roots) rmax = std::max(rmax, static_cast<long double>(std::abs(z)));
    long double tight = std::max(1.5L * rmax, 0.01L);
    if (tight >= 0.25L * rho) break;
    rho = tight;
  }
  return out;
}

// argmin over a small disk of sigma_min(lambda I - C); pulls a cluster mean
// onto the nearby (possibly defective) eigenvalue.
inline cplx refine_eigenvalue(const ComplexMatrix& c, cplx start, double radius) {
  int n = c.rows();
  auto sigma_min = [&](const std::vector<double>& p) {
    ComplexMatrix m = c * cplx(-1.0);
    cplx lambda(p[0], p[1]);
    for (int i = 0; i < n; ++i) m(i, i) += lambda;
    Svd s = svd(m);
    return s.sigma.back();
  };
  SearchOptions opt;
  opt.min_step_rel = 1e-9;
  opt.max_iter = 80;
  std::vector<std::vector<double>> starts{{start.real(), start.imag()}};
  SearchResult res =
      ball_pattern_search(sigma_min, {start.real(), start.imag()}, radius, starts, opt);
  return {res.best_point[0], res.best_point[1]};
}

}  // namespace detail

struct EigenEstimate {
  cplx value;
  int multiplicity;
};

// Distinct eigenvalues of C with multiplicities: long-double char poly
// roots, crude clustering, sigma_min refinement of each cluster mean, and a
// tight re-cluster that merges pieces refining to the same point.
inline std::vector<EigenEstimate> matrix_eigenvalues(const ComplexMatrix& c,
                                                     double crude_tol = 2e-2,
                                                     double refine_tol = 1e-3) {
  ScalarPoly p = detail::char_poly(c);
  RootMultiset roots = aberth_roots(p, 1e-10, 500);
  std::vector<ClusteredRoot> crude = cluster_roots(roots, crude_tol);

  struct Piece {
    cplx refined;
    int mult;
  };
  std::vector<Piece> pieces;
  for (size_t i = 0; i < crude.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < crude.size(); ++j)
      if (j != i) nearest = std::min(nearest, std::abs(crude[i].value - crude[j].value));
    double radius = 0.05 * (1.0 + std::abs(crude[i].value));
    if (std::isfinite(nearest)) radius = std::min(radius, 0.45 * nearest);
    radius = std::max(radius, 1e-6);
    pieces.push_back({detail::refine_eigenvalue(c, crude[i].value, radius), crude[i].multiplicity});
  }

  // Merge pieces whose refinements coincide.
  std::vector<EigenEstimate> out;
  std::vector<char> used(pieces.size(), 0);
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (used[i]) continue;
    EigenEstimate e{pieces[i].refined, pieces[i].mult};
    cplx weighted = pieces[i].refined * double(pieces[i].mult);
    used[i] = 1;
    for (size_t j = i + 1; j < pieces.size(); ++j) {
      if (used[j]) continue;
      double tol = refine_tol * (1.0 + std::max(std::abs(e.value), std::abs(pieces[j].refined)));
      if (std::abs(e.value - pieces[j].refined) <= tol) {
        used[j] = 1;
        weighted += pieces[j].refined * double(pieces[j].mult);
        e.multiplicity += pieces[j].mult;
        e.value = weighted / double(e.multiplicity);
      }
    }
    out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const EigenEstimate& a, const EigenEstimate& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

// Ranks of (lambda0 I - C)^j for j = 1.. until N - rank reaches the claimed
// multiplicity (hard cap j = mult). The cut maximizes the singular-value
// gap inside the window allowed by the multiplicity and the previous ranks.
inline RankSequence rank_sequence(const ComplexMatrix& c, cplx lambda0, int mult,
                                  double gap_min = 1e3) {
  int n = c.rows();
  RankSequence rs;
  rs.eigenvalue = lambda0;
  rs.algebraic_multiplicity = mult;

  ComplexMatrix shifted = c * cplx(-1.0);
  for (int i = 0; i < n; ++i) shifted(i, i) += lambda0;

  ComplexMatrix power = ComplexMatrix::identity(n);
  int r_prev = n;
  int gamma_prev = std::numeric_limits<int>::max();
  for (int j = 1; j <= mult; ++j) {
    power = power * shifted;
    Svd s = svd(power);
    const std::vector<double>& sig = s.sigma;

    if (sig.front() < 1e-300) {
      // Whole power vanished numerically.
      if (n - mult > 0) {
        rs.determined = false;
        rs.ranks.push_back(r_prev);
        return rs;
      }
      rs.ranks.push_back(0);
      r_prev = 0;
      break;
    }

    int lo = std::max(n - mult, r_prev - gamma_prev);
    int hi = r_prev - 1;
    if (lo > hi) {
      rs.determined = false;
      return rs;
    }
    int best_rank = -1;
    double best_gap = 0.0;
    for (int cut = lo; cut <= hi; ++cut) {
      double denom = std::max(cut < n ? sig[cut] : 0.0, 1e-300);
      // cut == 0 would claim the whole power is zero, which the check above
      // already rejected; sig.front()/denom keeps it non-competitive.
      double numer = cut == 0 ? sig.front() : sig[cut - 1];
      double gap = numer / denom;
      if (gap > best_gap) {
        best_gap = gap;
        best_rank = cut;
      }
    }
    rs.min_gap = std::min(rs.min_gap, best_gap);
    if (best_rank < 0 || best_gap < gap_min) {
      rs.determined = false;
      return rs;
    }
    rs.ranks.push_back(best_rank);
    gamma_prev = r_prev - best_rank;
    r_prev = best_rank;
    if (n - best_rank == mult) break;
  }
  if (n - r_prev != mult) {
    if (!rs.determined) return rs;
    numerical_error("rank_sequence: nullity stagnated at " + std::to_string(n - r_prev) +
                    " before reaching multiplicity " + std::to_string(mult));
  }
  return rs;
}

// gamma_j = r_{j-1} - r_j with r_0 = N; blocks of exact size s number
// gamma_s - gamma_{s+1}.
inline std::vector<int> partition_from_ranks(const RankSequence& rs, int n) {
  std::vector<int> gamma;
  int r_prev = n;
  for (int r : rs.ranks) {
    gamma.push_back(r_prev - r);
    r_prev = r;
  }
  for (size_t j = 0; j < gamma.size(); ++j) {
    if (gamma[j] < 0 || (j > 0 && gamma[j] > gamma[j - 1]))
      numerical_error("partition_from_ranks: invalid gamma sequence (tolerance failure upstream)");
  }
  std::vector<int> partition;
  for (size_t s = 0; s < gamma.size(); ++s) {
    int next = (s + 1 < gamma.size()) ? gamma[s + 1] : 0;
    for (int b = 0; b < gamma[s] - next; ++b) partition.push_back(static_cast<int>(s) + 1);
  }
  std::sort(partition.rbegin(), partition.rend());
  int sum = 0;
  for (int s : partition) sum += s;
  if (sum != rs.algebraic_multiplicity)
    numerical_error("partition_from_ranks: partition sums to " + std::to_string(sum) +
                    ", expected multiplicity " + std::to_string(rs.algebraic_multiplicity));
  return partition;
}

namespace detail {

inline double project_out(std::vector<cplx>& v, const std::vector<std::vector<cplx>>& basis) {
  for (const auto& b : basis) {
    cplx dot = 0.0;
    for (size_t i = 0; i < v.size(); ++i) dot += std::conj(b[i]) * v[i];
    for (size_t i = 0; i < v.size(); ++i) v[i] -= dot * b[i];
  }
  double nrm = 0.0;
  for (const cplx& x : v) nrm += std::norm(x);
  return std::sqrt(nrm);
}

inline void normalize(std::vector<cplx>& v) {
  double nrm = 0.0;
  for (const cplx& x : v) nrm += std::norm(x);
  nrm = std::sqrt(nrm);
  for (cplx& x : v) x /= nrm;
}

}  // namespace detail

struct JordanChain {
  cplx eigenvalue;
  std::vector<std::vector<cplx>> vectors;  // v_0 (eigenvector) .. v_{s-1}
  double residual = 0.0;                   // worst ||C v_i - l v_i - v_{i-1}||
};

// Staircase construction: fresh chain tops at level j live in ker(N^j),
// orthogonal to ker(N^{j-1}) and to tops propagated from longer chains;
// chains follow by repeated application of N = C - lambda0 I.
inline std::vector<JordanChain> jordan_chains(const ComplexMatrix& c, cplx lambda0,
                                              const std::vector<int>& partition,
                                              double deficiency_tol = 1e-8) {
  int n = c.rows();
  if (partition.empty()) return {};
  int s_max = partition[0];

  std::vector<int> gamma(s_max + 2, 0);  // gamma[j] = #blocks of size >= j
  for (int s : partition)
    for (int j = 1; j <= s; ++j) ++gamma[j];

  ComplexMatrix nmat = c;
  for (int i = 0; i < n; ++i) nmat(i, i) -= lambda0;

  // Kernel bases of N^j with the nullities the partition dictates.
  std::vector<std::vector<std::vector<cplx>>> kernels(s_max + 1);
  ComplexMatrix power = ComplexMatrix::identity(n);
  int nullity = 0;
  for (int j = 1; j <= s_max; ++j) {
    power = power * nmat;
    nullity += gamma[j];
    Svd s = svd(power);
    for (int k = n - nullity; k < n; ++k) {
      std::vector<cplx> col(n);
      for (int i = 0; i < n; ++i) col[i] = s.v(i, k);
      kernels[j].push_back(std::move(col));
    }
  }

  struct Top {
    std::vector<cplx> vec;
    int height;  // chain length for fresh generators
    bool fresh;
  };
  std::vector<JordanChain> chains;
  std::vector<Top> tops;  // tops at the current level

  for (int j = s_max; j >= 1; --j) {
    std::vector<Top> next_tops;
    for (const Top& t : tops) {
      Top prop;
      prop.vec = nmat.apply(t.vec);
      prop.height = t.height;
      prop.fresh = false;
      next_tops.push_back(std::move(prop));
    }
    int fresh_needed = gamma[j] - gamma[j + 1];
    if (fresh_needed > 0) {
      // Orthonormal avoid-set: ker(N^{j-1}) plus current tops.
      std::vector<std::vector<cplx>> avoid;
      if (j >= 2)
        for (const auto& v : kernels[j - 1]) avoid.push_back(v);
      for (const Top& t : next_tops) {
        std::vector<cplx> w = t.vec;
        if (detail::project_out(w, avoid) > 1e-12) {
          detail::normalize(w);
          avoid.push_back(std::move(w));
        }
      }
      for (int pick = 0; pick < fresh_needed; ++pick) {
        double best_norm = -1.0;
        std::vector<cplx> best;
        for (const auto& cand : kernels[j]) {
          std::vector<cplx> w = cand;
          double nrm = detail::project_out(w, avoid);
          if (nrm > best_norm) {
            best_norm = nrm;
            best = std::move(w);
          }
        }
        if (best_norm < deficiency_tol)
          numerical_error("jordan_chains: complement extraction degenerate at level " +
                          std::to_string(j) + " (residual " + fmt17(best_norm) + ")");
        detail::normalize(best);
        avoid.push_back(best);
        Top t;
        t.vec = best;
        t.height = j;
        t.fresh = true;
        next_tops.push_back(std::move(t));
      }
    }
    for (const Top& t : next_tops)
      if (t.fresh && t.height == j) {
        JordanChain chain;
        chain.eigenvalue = lambda0;
        chain.vectors.assign(j, {});
        chain.vectors[j - 1] = t.vec;
        for (int i = j - 1; i >= 1; --i) chain.vectors[i - 1] = nmat.apply(chain.vectors[i]);
        chains.push_back(std::move(chain));
      }
    tops = std::move(next_tops);
  }

  std::sort(chains.begin(), chains.end(), [](const JordanChain& a, const JordanChain& b) {
    return a.vectors.size() > b.vectors.size();
  });

  double cnorm = spectral_norm(c);
  for (JordanChain& chain : chains) {
    double scale = 0.0;
    for (const auto& v : chain.vectors) {
      double nrm = 0.0;
      for (const cplx& x : v) nrm += std::norm(x);
      scale = std::max(scale, std::sqrt(nrm));
    }
    for (auto& v : chain.vectors)
      for (cplx& x : v) x /= scale;
    for (size_t i = 0; i < chain.vectors.size(); ++i) {
      std::vector<cplx> lhs = c.apply(chain.vectors[i]);
      for (int k = 0; k < n; ++k) {
        lhs[k] -= lambda0 * chain.vectors[i][k];
        if (i > 0) lhs[k] -= chain.vectors[i - 1][k];
      }
      double res = 0.0;
      for (const cplx& x : lhs) res += std::norm(x);
      chain.residual = std::max(chain.residual, std::sqrt(res));
    }
    if (chain.residual > 1e-6 * (1.0 + cnorm))
      numerical_error("jordan_chains: chain recurrence residual " + fmt17(chain.residual) +
                      " exceeds 1e-6 * (1 + ||C||)");
  }
  return chains;
}

// Signature of a raw matrix (or a companion matrix) from rank analysis only.
inline JordanSignature matrix_jordan_signature(const ComplexMatrix& c, double gap_min = 1e3) {
  JordanSignature sig;
  sig.linear_size = c.rows();
  for (const EigenEstimate& e : matrix_eigenvalues(c)) {
    EigenStructure es;
    es.value = e.value;
    es.multiplicity = e.multiplicity;
    RankSequence rs = rank_sequence(c, e.value, e.multiplicity, gap_min);
    if (!rs.determined) {
      es.determined = false;
    } else {
      try {
        es.partition = partition_from_ranks(rs, c.rows());
      } catch (const Error&) {
        es.determined = false;
      }
    }
    sig.eigenvalues.push_back(std::move(es));
  }
  return sig;
}

struct JordanPair {
  ComplexMatrix x;  // n x dn, columns grouped by eigenvalue then chain
  ComplexMatrix j;  // dn x dn block-diagonal Jordan matrix
  JordanSignature signature;
  double chain_residual = 0.0;       // companion-space recurrence residual
  double poly_residual = 0.0;        // matrix-polynomial chain relation residual
  int worst_column = -1;
};

// Jordan pair of P_u via the companion linearization; X is the top n rows
// of the companion chain matrix. The matrix-polynomial chain relation
//   sum_{j=0}^{i} (1/j!) P^(j)(lambda0) phi_{i-j} = 0
// is verified for every column.
inline JordanPair jordan_pair(const Family& f, const ParamPoint& u, double gap_min = 1e3) {
  MatrixPolynomial p = evaluate_coeffs(f, u);
  if (!f.monic_flag && p.leading_singular)
    numerical_error("jordan_pair: leading coefficient singular at this point");
  ComplexMatrix c = companion_matrix(p);
  int nn = c.rows();

  JordanPair out;
  out.signature.linear_size = nn;
  out.x = ComplexMatrix(f.n, nn);
  out.j = ComplexMatrix(nn, nn);

  double coeff_norm = 0.0;
  for (const ComplexMatrix& a : p.coeffs) coeff_norm = std::max(coeff_norm, spectral_norm(a));

  int col = 0;
  for (const EigenEstimate& e : matrix_eigenvalues(c)) {
    EigenStructure es;
    es.value = e.value;
    es.multiplicity = e.multiplicity;
    RankSequence rs = rank_sequence(c, e.value, e.multiplicity, gap_min);
    if (!rs.determined)
      numerical_error("jordan_pair: rank gap test undetermined at eigenvalue " +
                      fmt17(e.value.real()) + (e.value.imag() < 0 ? "-" : "+") +
                      fmt17(std::abs(e.value.imag())) + "i");
    es.partition = partition_from_ranks(rs, nn);
    out.signature.eigenvalues.push_back(es);

    std::vector<JordanChain> chains = jordan_chains(c, e.value, es.partition);
    for (const JordanChain& chain : chains) {
      out.chain_residual = std::max(out.chain_residual, chain.residual);
      int len = static_cast<int>(chain.vectors.size());
      // Top-block extraction, chain column order v_0 .. v_{s-1}.
      std::vector<std::vector<cplx>> phi(len, std::vector<cplx>(f.n));
      double phi_scale = 0.0;
      for (int i = 0; i < len; ++i) {
        for (int r = 0; r < f.n; ++r) phi[i][r] = chain.vectors[i][r];
        double nrm = 0.0;
        for (const cplx& xx : phi[i]) nrm += std::norm(xx);
        phi_scale = std::max(phi_scale, std::sqrt(nrm));
      }
      for (int i = 0; i < len; ++i) {
        std::vector<cplx> acc(f.n, cplx(0.0));
        for (int jd = 0; jd <= i; ++jd) {
          ComplexMatrix pj = p.scaled_derivative(e.value, jd);
          std::vector<cplx> term = pj.apply(phi[i - jd]);
          for (int r = 0; r < f.n; ++r) acc[r] += term[r];
        }
        double res = 0.0;
        for (const cplx& xx : acc) res += std::norm(xx);
        res = std::sqrt(res) / std::max(phi_scale, 1e-12);
        if (res > out.poly_residual) {
          out.poly_residual = res;
          out.worst_column = col + i;
        }
      }
      for (int i = 0; i < len; ++i) {
        for (int r = 0; r < f.n; ++r) out.x(r, col + i) = phi[i][r];
        out.j(col + i, col + i) = e.value;
        if (i + 1 < len) out.j(col + i, col + i + 1) = 1.0;
      }
      col += len;
    }
  }
  if (col != nn)
    numerical_error("jordan_pair: chain columns cover " + std::to_string(col) + " of " +
                    std::to_string(nn));
  if (out.poly_residual > 1e-6 * (1.0 + coeff_norm))
    invariant_error("jordan_pair: chain relation residual " + fmt17(out.poly_residual) +
                    " at column " + std::to_string(out.worst_column));
  return out;
}

struct StratifyAxis {
  int param_index = 0;  // 0-based index into the parameter vector
  double lo = -1.0, hi = 1.0;
  int nodes = 2;
};

struct StratumNode {
  ParamPoint point;
  JordanSignature signature;
  std::string text;
  std::uint64_t hash = 0;
  bool determined = false;
  int region = -1;
};

struct StratificationMap {
  std::vector<StratumNode> nodes;
  int n1 = 0, n2 = 1;  // grid extents (n2 = 1 for a 1-dimensional slice)
  int regions = 0;
  std::vector<std::pair<std::uint64_t, std::string>> legend;  // hash -> text
};

// Per-node Jordan signatures over a 1- or 2-dimensional parameter slice,
// grouped into connected same-signature regions. Node failures are marked
// undetermined without aborting the map.
inline StratificationMap stratify(const Family& f, const ParamPoint& base,
                                  const StratifyAxis& axis1,
                                  const std::optional<StratifyAxis>& axis2 = std::nullopt,
                                  double gap_min = 1e3) {
  if (axis1.param_index < 0 || axis1.param_index >= f.m ||
      (axis2 && (axis2->param_index < 0 || axis2->param_index >= f.m)))
    config_error("stratify: axis parameter index out of range");
  if (axis1.nodes < 2 || (axis2 && axis2->nodes < 2))
    config_error("stratify: need at least 2 nodes per axis");

  StratificationMap map;
  map.n1 = axis1.nodes;
  map.n2 = axis2 ? axis2->nodes : 1;

  for (int j = 0; j < map.n2; ++j) {
    for (int i = 0; i < map.n1; ++i) {
      StratumNode node;
      node.point = base;
      node.point.coords[axis1.param_index] =
          axis1.lo + (axis1.hi - axis1.lo) * i / (axis1.nodes - 1);
      if (axis2)
        node.point.coords[axis2->param_index] =
            axis2->lo + (axis2->hi - axis2->lo) * j / (axis2->nodes - 1);
      try {
        MatrixPolynomial p = evaluate_coeffs(f, node.point);
        if (p.leading_singular) numerical_error("singular leading coefficient");
        JordanSignature sig = matrix_jordan_signature(companion_matrix(p), gap_min);
        node.signature = sig;
        node.determined = sig.determined();
        node.text = sig.canonical_text();
      } catch (const Error&) {
        node.determined = false;
        node.text = "undetermined";
      }
      node.hash = fnv1a64(node.text);
      map.nodes.push_back(std::move(node));
    }
  }

  // Connected grouping (4-neighborhood on the slice grid).
  std::vector<int> parent(map.nodes.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto join = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[a] = b;
  };
  auto idx = [&](int i, int j) { return j * map.n1 + i; };
  for (int j = 0; j < map.n2; ++j) {
    for (int i = 0; i < map.n1; ++i) {
      if (i + 1 < map.n1 && map.nodes[idx(i, j)].hash == map.nodes[idx(i + 1, j)].hash)
        join(idx(i, j), idx(i + 1, j));
      if (j + 1 < map.n2 && map.nodes[idx(i, j)].hash == map.nodes[idx(i, j + 1)].hash)
        join(idx(i, j), idx(i, j + 1));
    }
  }
  std::vector<int> region_of(map.nodes.size(), -1);
  for (size_t k = 0; k < map.nodes.size(); ++k) {
    int root = find(static_cast<int>(k));
    if (region_of[root] < 0) region_of[root] = map.regions++;
    map.nodes[k].region = region_of[root];
  }
  for (const StratumNode& node : map.nodes) {
    bool seen = false;
    for (const auto& [h, t] : map.legend)
      if (h == node.hash) {
        seen = true;
        break;
      }
    if (!seen) map.legend.emplace_back(node.hash, node.text);
  }
  return map;
}

}  // namespace mpspec
