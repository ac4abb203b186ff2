#include "qsecant/covariants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsecant {

namespace {

void partitions_rec(int remaining, int max_part, Partition& current, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions_rec(remaining - part, part, current, out);
    current.pop_back();
  }
}

long long factorial(int m) {
  long long f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

void check_partition(const Partition& lambda) {
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 1 || (i > 0 && lambda[i] > lambda[i - 1])) {
      throw Error("a partition must be a weakly decreasing list of positive integers");
    }
  }
}

// Murnaghan-Nakayama on beta numbers: removing a rim hook of length r moves one
// bead from b to b - r, with sign (-1)^(beads jumped over).
long long mn_rec(std::vector<int>& beads, const Partition& mu, std::size_t next) {
  if (next == mu.size()) return 1;
  const int r = mu[next];
  long long total = 0;
  for (std::size_t i = 0; i < beads.size(); ++i) {
    const int b = beads[i];
    const int target = b - r;
    if (target < 0 || std::find(beads.begin(), beads.end(), target) != beads.end()) continue;
    const auto jumped = std::count_if(beads.begin(), beads.end(), [&](int x) { return x > target && x < b; });
    beads[i] = target;
    const long long sub = mn_rec(beads, mu, next + 1);
    beads[i] = b;
    total += (jumped % 2 == 0) ? sub : -sub;
  }
  return total;
}

std::vector<int> slot_images(std::size_t index, int d, int m, const std::vector<int>& perm) {
  std::vector<int> digits(static_cast<std::size_t>(m));
  for (int c = m - 1; c >= 0; --c) {
    digits[static_cast<std::size_t>(c)] = static_cast<int>(index % static_cast<std::size_t>(d));
    index /= static_cast<std::size_t>(d);
  }
  std::vector<int> moved(static_cast<std::size_t>(m));
  for (int c = 0; c < m; ++c) moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(c)])] = digits[static_cast<std::size_t>(c)];
  return moved;
}

// 2^m x 2^m matrix of P_lambda on the m slots of one qubit, row-major.
std::vector<Complex> qubit_projector_matrix(int m, const Partition& lambda) {
  const std::size_t dim = std::size_t{1} << m;
  std::vector<Complex> mat(dim * dim);
  std::vector<Complex> e(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    std::fill(e.begin(), e.end(), Complex{});
    e[col] = 1.0;
    const auto image = young_isotypic_projection(e, 2, m, lambda);
    for (std::size_t row = 0; row < dim; ++row) mat[row * dim + col] = image[row];
  }
  return mat;
}

}  // namespace

std::vector<Partition> partitions_of(int m) {
  if (m < 1) throw Error("partitions_of: m must be positive");
  std::vector<Partition> out;
  Partition current;
  partitions_rec(m, m, current, out);
  return out;
}

bool is_rectangular(const Partition& lambda, int rows) {
  if (static_cast<int>(lambda.size()) != rows || lambda.empty()) return false;
  return std::all_of(lambda.begin(), lambda.end(), [&](int p) { return p == lambda.front(); });
}

long long hook_length_dimension(const Partition& lambda) {
  check_partition(lambda);
  const int m = std::accumulate(lambda.begin(), lambda.end(), 0);
  long long hooks = 1;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    for (int j = 0; j < lambda[i]; ++j) {
      int below = 0;
      for (std::size_t k = i + 1; k < lambda.size() && lambda[k] > j; ++k) ++below;
      hooks *= (lambda[i] - j - 1) + below + 1;
    }
  }
  return factorial(m) / hooks;
}

long long character_value(const Partition& lambda, const Partition& mu) {
  check_partition(lambda);
  const int m = std::accumulate(lambda.begin(), lambda.end(), 0);
  if (std::accumulate(mu.begin(), mu.end(), 0) != m) throw Error("character_value: sizes differ");
  const int len = static_cast<int>(lambda.size());
  std::vector<int> beads;
  for (int i = 0; i < len; ++i) beads.push_back(lambda[static_cast<std::size_t>(i)] + len - 1 - i);
  return mn_rec(beads, mu, 0);
}

Partition cycle_type(const std::vector<int>& perm) {
  const std::size_t m = perm.size();
  std::vector<bool> seen(m, false);
  Partition out;
  for (std::size_t i = 0; i < m; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

long long class_size(const Partition& type) {
  const int m = std::accumulate(type.begin(), type.end(), 0);
  long long denom = 1;
  for (int k = 1; k <= m; ++k) {
    const auto a = std::count(type.begin(), type.end(), k);
    for (long i = 0; i < a; ++i) denom *= k;
    denom *= factorial(static_cast<int>(a));
  }
  return factorial(m) / denom;
}

CharacterTable characters(int m) {
  if (m < 1 || m > 8) throw Error("characters: supported for 1 <= m <= 8");
  CharacterTable t;
  t.m = m;
  t.irreps = partitions_of(m);
  t.classes = t.irreps;
  for (const auto& c : t.classes) t.class_sizes.push_back(class_size(c));
  for (const auto& lambda : t.irreps) {
    std::vector<long long> row;
    for (const auto& c : t.classes) row.push_back(character_value(lambda, c));
    t.values.push_back(std::move(row));
  }
  return t;
}

std::vector<Complex> young_isotypic_projection(const std::vector<Complex>& tensor, int d, int m,
                                               const Partition& lambda) {
  if (m < 1 || m > 6) throw Error("isotypic projection enumerates m! permutations and needs 1 <= m <= 6");
  if (d < 1) throw Error("isotypic projection: local dimension must be positive");
  if (std::accumulate(lambda.begin(), lambda.end(), 0) != m) throw Error("partition does not match m");
  std::size_t dim = 1;
  for (int i = 0; i < m; ++i) dim *= static_cast<std::size_t>(d);
  if (tensor.size() != dim) throw Error("isotypic projection: tensor size mismatch");
  std::vector<Complex> out(dim);
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  const double scale = static_cast<double>(hook_length_dimension(lambda)) / static_cast<double>(factorial(m));
  do {
    const long long chi = character_value(lambda, cycle_type(perm));
    if (chi == 0) continue;
    const double w = scale * static_cast<double>(chi);
    for (std::size_t j = 0; j < dim; ++j) {
      if (tensor[j] == Complex{}) continue;
      const auto moved = slot_images(j, d, m, perm);
      std::size_t target = 0;
      for (int digit : moved) target = target * static_cast<std::size_t>(d) + static_cast<std::size_t>(digit);
      out[target] += w * tensor[j];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Complex> tensor_power(const PureState& s, int m) {
  if (m < 1) throw Error("tensor_power: m must be positive");
  if (static_cast<long long>(m) * s.qubits() > kMaxQubits) throw Error("tensor_power: result too large");
  std::vector<Complex> out{1.0};
  for (int c = 0; c < m; ++c) {
    std::vector<Complex> next(out.size() * s.dim());
    for (std::size_t a = 0; a < out.size(); ++a) {
      for (std::size_t b = 0; b < s.dim(); ++b) next[a * s.dim() + b] = out[a] * s[b];
    }
    out.swap(next);
  }
  return out;
}

std::vector<Complex> isotypic_project(const std::vector<Complex>& power, int n, int m,
                                      const std::vector<Partition>& lambdas) {
  if (n < 1 || m < 1 || m > 6) throw Error("isotypic_project: need n >= 1 and 1 <= m <= 6");
  if (m * n > 24) throw Error("isotypic_project: m * n must not exceed 24");
  if (static_cast<int>(lambdas.size()) != n) throw Error("isotypic_project: one partition per party");
  const int bits = m * n;
  if (power.size() != (std::size_t{1} << bits)) throw Error("isotypic_project: tensor size mismatch");
  for (const auto& lambda : lambdas) {
    if (lambda.size() > 2) throw Error("isotypic_project: a qubit carries partitions with at most two rows");
  }
  std::vector<Complex> cur = power;
  const std::size_t group = std::size_t{1} << m;
  std::vector<Complex> gathered(group);
  for (int party = 1; party <= n; ++party) {
    const auto mat = qubit_projector_matrix(m, lambdas[static_cast<std::size_t>(party - 1)]);
    // Bit position (from the least significant end) of slot c of this party.
    std::vector<std::size_t> pos(static_cast<std::size_t>(m));
    std::size_t mask = 0;
    for (int c = 0; c < m; ++c) {
      pos[static_cast<std::size_t>(c)] = static_cast<std::size_t>((m - 1 - c) * n + (n - party));
      mask |= std::size_t{1} << pos[static_cast<std::size_t>(c)];
    }
    auto spread = [&](std::size_t g) {
      std::size_t out = 0;
      for (int c = 0; c < m; ++c) {
        if ((g >> (m - 1 - c)) & 1u) out |= std::size_t{1} << pos[static_cast<std::size_t>(c)];
      }
      return out;
    };
    std::vector<std::size_t> offsets(group);
    for (std::size_t g = 0; g < group; ++g) offsets[g] = spread(g);
    for (std::size_t base = 0; base < cur.size(); ++base) {
      if (base & mask) continue;
      for (std::size_t g = 0; g < group; ++g) gathered[g] = cur[base | offsets[g]];
      for (std::size_t r = 0; r < group; ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < group; ++c) acc += mat[r * group + c] * gathered[c];
        cur[base | offsets[r]] = acc;
      }
    }
  }
  return cur;
}

double invariant_projection_norm(const PureState& s, int m, std::string* note) {
  if (m < 1) throw Error("invariant_projection_norm: m must be positive");
  if (m % 2 != 0) {
    if (note) *note = "odd degree: SL(2) has no invariants in an odd tensor power of C^2";
    return 0.0;
  }
  const int n = s.qubits();
  const std::vector<Partition> lambdas(static_cast<std::size_t>(n), Partition{m / 2, m / 2});
  const auto projected = isotypic_project(tensor_power(normalize(s), m), n, m, lambdas);
  double sum = 0.0;
  for (const auto& x : projected) sum += std::norm(x);
  return std::sqrt(sum);
}

// ---------------------------------------------------------------- forms

int SparseMultiPoly::degree_in(int set) const {
  if (terms.empty()) return -1;
  const auto& e = terms.begin()->first;
  return e[static_cast<std::size_t>(2 * set)] + e[static_cast<std::size_t>(2 * set + 1)];
}

void SparseMultiPoly::add_term(const std::vector<int>& exponents, Complex coefficient) {
  if (static_cast<int>(exponents.size()) != 2 * sets) throw Error("exponent vector has the wrong length");
  if (coefficient == Complex{}) return;
  auto [it, inserted] = terms.emplace(exponents, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == Complex{}) terms.erase(it);
  }
}

SparseMultiPoly operator+(const SparseMultiPoly& a, const SparseMultiPoly& b) {
  if (a.sets != b.sets) throw Error("polynomials over different variable sets");
  SparseMultiPoly out = a;
  for (const auto& [e, c] : b.terms) out.add_term(e, c);
  return out;
}

SparseMultiPoly operator*(const SparseMultiPoly& a, const SparseMultiPoly& b) {
  if (a.sets != b.sets) throw Error("polynomials over different variable sets");
  SparseMultiPoly out;
  out.sets = a.sets;
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

SparseMultiPoly operator*(Complex c, const SparseMultiPoly& a) {
  SparseMultiPoly out;
  out.sets = a.sets;
  for (const auto& [e, x] : a.terms) out.add_term(e, c * x);
  return out;
}

Complex evaluate(const SparseMultiPoly& p, const std::vector<std::array<Complex, 2>>& x) {
  if (static_cast<int>(x.size()) != p.sets) throw Error("evaluate: wrong number of variable sets");
  Complex total{};
  for (const auto& [e, c] : p.terms) {
    Complex term = c;
    for (int i = 0; i < p.sets; ++i) {
      term *= std::pow(x[static_cast<std::size_t>(i)][0], e[static_cast<std::size_t>(2 * i)]);
      term *= std::pow(x[static_cast<std::size_t>(i)][1], e[static_cast<std::size_t>(2 * i + 1)]);
    }
    total += term;
  }
  return total;
}

SparseMultiPoly state_to_form(const PureState& s) {
  SparseMultiPoly f;
  f.sets = s.qubits();
  for (std::size_t i = 0; i < s.dim(); ++i) {
    std::vector<int> e(static_cast<std::size_t>(2 * f.sets), 0);
    for (int q = 1; q <= f.sets; ++q) e[static_cast<std::size_t>(2 * (q - 1) + s.bit(i, q))] = 1;
    f.add_term(e, s[i]);
  }
  return f;
}

PureState form_to_state(const SparseMultiPoly& f) {
  const int n = f.sets;
  std::vector<Complex> amps(std::size_t{1} << n);
  for (const auto& [e, c] : f.terms) {
    std::size_t index = 0;
    for (int q = 0; q < n; ++q) {
      const int a = e[static_cast<std::size_t>(2 * q)];
      const int b = e[static_cast<std::size_t>(2 * q + 1)];
      if (a + b != 1) throw Error("form_to_state: the form is not multilinear");
      index = (index << 1) | static_cast<std::size_t>(b);
    }
    amps[index] += c;
  }
  return PureState(n, std::move(amps));
}

namespace {

// Join product over two copies: exponent layout [copy][set][component].
using JoinTerms = std::map<std::vector<int>, Complex>;

void join_add(JoinTerms& t, const std::vector<int>& e, Complex c) {
  if (c == Complex{}) return;
  auto [it, inserted] = t.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) t.erase(it);
  }
}

// d/dv1 d/dv2 applied to every term (v1, v2 are flat variable positions).
void add_second_derivative(const JoinTerms& in, std::size_t v1, std::size_t v2, double sign, JoinTerms& out) {
  for (const auto& [e, c] : in) {
    if (e[v1] == 0 || e[v2] == 0) continue;
    std::vector<int> d = e;
    Complex coef = c * static_cast<double>(d[v1]);
    --d[v1];
    coef *= static_cast<double>(d[v2]);
    --d[v2];
    join_add(out, d, sign * coef);
  }
}

}  // namespace

SparseMultiPoly multi_transvectant(const std::vector<SparseMultiPoly>& forms, const std::vector<int>& j,
                                   std::string* note) {
  if (forms.size() != 2) throw Error("only binary forms (two of them) are supported by the omega process");
  const int n = forms[0].sets;
  if (forms[1].sets != n) throw Error("transvectant: forms over different variable sets");
  if (static_cast<int>(j.size()) != n) throw Error("transvectant: one order per variable set");
  SparseMultiPoly zero;
  zero.sets = n;
  for (int i = 0; i < n; ++i) {
    if (j[static_cast<std::size_t>(i)] < 0) throw Error("transvectant orders must be non-negative");
    for (const auto& f : forms) {
      if (!f.is_zero() && f.degree_in(i) < j[static_cast<std::size_t>(i)]) {
        if (note) *note = "derivative order exceeds the degree in variable set " + std::to_string(i + 1);
        return zero;
      }
    }
  }
  const std::size_t width = static_cast<std::size_t>(2 * n);
  JoinTerms cur;
  for (const auto& [ea, ca] : forms[0].terms) {
    for (const auto& [eb, cb] : forms[1].terms) {
      std::vector<int> e(2 * width);
      std::copy(ea.begin(), ea.end(), e.begin());
      std::copy(eb.begin(), eb.end(), e.begin() + static_cast<std::ptrdiff_t>(width));
      join_add(cur, e, ca * cb);
    }
  }
  for (int i = 0; i < n; ++i) {
    const std::size_t y10 = static_cast<std::size_t>(2 * i);
    const std::size_t y11 = y10 + 1;
    const std::size_t y20 = width + y10;
    const std::size_t y21 = width + y11;
    for (int rep = 0; rep < j[static_cast<std::size_t>(i)]; ++rep) {
      JoinTerms next;
      add_second_derivative(cur, y10, y21, 1.0, next);
      add_second_derivative(cur, y20, y11, -1.0, next);
      cur.swap(next);
    }
  }
  SparseMultiPoly out;
  out.sets = n;
  for (const auto& [e, c] : cur) {
    std::vector<int> traced(width);
    for (std::size_t v = 0; v < width; ++v) traced[v] = e[v] + e[width + v];
    out.add_term(traced, c);
  }
  return out;
}

SparseMultiPoly omega_apply(const std::vector<SparseMultiPoly>& polys, int r, std::string* note) {
  if (polys.size() != 2) throw Error("omega_apply: only d = 2 (binary forms) is supported");
  for (const auto& p : polys) {
    if (p.sets != 1) throw Error("omega_apply: forms must use a single variable set");
  }
  return multi_transvectant(polys, {r}, note);
}

}  // namespace qsecant
