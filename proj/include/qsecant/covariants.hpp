#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qsecant/state.hpp"

namespace qsecant {

/// Weakly decreasing positive parts.
using Partition = std::vector<int>;

/// All partitions of m, in decreasing lexicographic order ((m) first).
std::vector<Partition> partitions_of(int m);

/// True iff lambda has exactly `rows` parts, all equal.
bool is_rectangular(const Partition& lambda, int rows);

/// Dimension of the Specht module S^lambda by the hook-length formula.
long long hook_length_dimension(const Partition& lambda);

/// chi_lambda on the class of the given cycle type (Murnaghan-Nakayama rule).
long long character_value(const Partition& lambda, const Partition& cycle_type);

/// Cycle type of a permutation of {0..m-1} given as images, sorted decreasingly.
Partition cycle_type(const std::vector<int>& perm);

/// m! / prod_k (k^{a_k} a_k!) for a cycle type with a_k cycles of length k.
long long class_size(const Partition& cycle_type);

/// Rows follow partitions_of(m) (irreducibles), columns follow classes (also
/// listed as partitions_of(m), read as cycle types).
struct CharacterTable {
  int m = 0;
  std::vector<Partition> irreps;
  std::vector<Partition> classes;
  std::vector<long long> class_sizes;
  std::vector<std::vector<long long>> values;
};

/// Supported for 1 <= m <= 8.
CharacterTable characters(int m);

/// (d_lambda / m!) sum_pi chi_lambda(pi) pi on (C^d)^{(x) m}, with pi moving
/// tensor slot c to slot pi(c). Enumerates all m! permutations (m <= 6).
std::vector<Complex> young_isotypic_projection(const std::vector<Complex>& tensor, int d, int m,
                                               const Partition& lambda);

/// s^{(x) m}, copy-major: the index is the concatenation of m n-bit copy indices.
std::vector<Complex> tensor_power(const PureState& s, int m);

/// Applies P_lambda_i to the slot group of party i, i.e. the m slots that
/// party i occupies across the copies of a copy-major m-fold tensor power of an
/// n-qubit space. Each lambda_i partitions m with at most two rows; m <= 6 and
/// m * n <= 24.
std::vector<Complex> isotypic_project(const std::vector<Complex>& power, int n, int m,
                                      const std::vector<Partition>& lambdas);

/// Norm of the projection of (s/|s|)^{(x) m} with lambda_i = (m/2, m/2) for every
/// party. Odd m gives exactly 0 and, when `note` is given, an explanation.
double invariant_projection_norm(const PureState& s, int m, std::string* note = nullptr);

/// Polynomial in n binary variable sets x^i = (x^i_0, x^i_1). Exponent vectors
/// have length 2n, laid out as (x^1_0, x^1_1, x^2_0, ...). Zero coefficients are
/// never stored.
struct SparseMultiPoly {
  int sets = 1;
  std::map<std::vector<int>, Complex> terms;

  bool is_zero() const { return terms.empty(); }
  /// Total degree in variable set i (0-based) of the first term, -1 for the zero polynomial.
  int degree_in(int set) const;
  void add_term(const std::vector<int>& exponents, Complex coefficient);
};

SparseMultiPoly operator+(const SparseMultiPoly& a, const SparseMultiPoly& b);
SparseMultiPoly operator*(const SparseMultiPoly& a, const SparseMultiPoly& b);
SparseMultiPoly operator*(Complex c, const SparseMultiPoly& a);

Complex evaluate(const SparseMultiPoly& p, const std::vector<std::array<Complex, 2>>& x);

/// f(x^1, ..., x^n) = sum_i c_i x^1_{i_1} ... x^n_{i_n}.
SparseMultiPoly state_to_form(const PureState& s);
/// Inverse of state_to_form; the form must be multilinear (degree one per set).
PureState form_to_state(const SparseMultiPoly& f);

/// tr prod_i Omega_{x^i}^{j_i} (f_1 (x) f_2), where for two copies y_1, y_2 of a
/// binary variable set Omega = d/dy_{1,0} d/dy_{2,1} - d/dy_{2,0} d/dy_{1,1} and
/// tr identifies both copies with x. With this convention (f, g)^(1) is the
/// Jacobian f_{x0} g_{x1} - f_{x1} g_{x0}. A derivative order above a form's
/// degree yields the zero polynomial and a note.
SparseMultiPoly multi_transvectant(const std::vector<SparseMultiPoly>& forms, const std::vector<int>& j,
                                   std::string* note = nullptr);

/// Single-set transvectant (f_1, f_2)^(r). Only binary forms (two of them) are supported.
SparseMultiPoly omega_apply(const std::vector<SparseMultiPoly>& polys, int r, std::string* note = nullptr);

}  // namespace qsecant
