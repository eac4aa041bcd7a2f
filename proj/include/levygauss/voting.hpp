// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "levygauss/exact.hpp"
#include "levygauss/rng.hpp"

namespace levygauss {

/// All nondecreasing m-tuples over {0..r-1}, lexicographically. This is the
/// canonical ordering of multisets used by the table format.
inline std::vector<std::vector<int>> enumerate_multisets(int m, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(m, 0);
  for (;;) {
    out.push_back(cur);
    int pos = m - 1;
    while (pos >= 0 && cur[pos] == r - 1) --pos;
    if (pos < 0) break;
    const int v = cur[pos] + 1;
    for (int i = pos; i < m; ++i) cur[i] = v;
  }
  return out;
}

/// A symmetric map phi: X_r^m -> X_r given by its value on each multiset.
/// Balanced schemes (every preimage of size r^(m-1)) push the uniform
/// measure on X_r^m forward to the uniform measure on X_r.
class VotingScheme {
 public:
  VotingScheme(int m, int r, std::vector<int> multiset_table) : m_(m), r_(r) {
    if (m < 2 || r < 2) throw std::invalid_argument("VotingScheme: need m >= 2 and r >= 2");
    multisets_ = enumerate_multisets(m, r);
    if (multiset_table.size() != multisets_.size())
      throw std::invalid_argument("VotingScheme: incomplete table");
    for (int v : multiset_table)
      if (v < 0 || v >= r) throw std::invalid_argument("VotingScheme: value outside alphabet");
    table_ = std::move(multiset_table);
    for (size_t i = 0; i < multisets_.size(); ++i) rank_[multisets_[i]] = static_cast<int>(i);
  }

  /// Build from an arbitrary function on ordered tuples, checking symmetry.
  template <class Fn>
  static VotingScheme from_function(int m, int r, Fn&& phi) {
    std::vector<std::vector<int>> multisets = enumerate_multisets(m, r);
    std::vector<int> table(multisets.size());
    for (size_t i = 0; i < multisets.size(); ++i) table[i] = phi(multisets[i]);
    VotingScheme scheme(m, r, std::move(table));
    // verify symmetry on all ordered tuples
    std::vector<int> tuple(m, 0);
    for (;;) {
      std::vector<int> sorted = tuple;
      std::sort(sorted.begin(), sorted.end());
      if (phi(tuple) != scheme.table_[scheme.rank_.at(sorted)])
        throw std::invalid_argument("VotingScheme: map is not symmetric");
      int pos = m - 1;
      while (pos >= 0 && tuple[pos] == r - 1) tuple[pos--] = 0;
      if (pos < 0) break;
      ++tuple[pos];
    }
    return scheme;
  }

  int arity() const { return m_; }
  int alphabet_size() const { return r_; }
  const std::vector<std::vector<int>>& multisets() const { return multisets_; }

  int apply(std::vector<int> args) const {
    if (static_cast<int>(args.size()) != m_)
      throw std::invalid_argument("VotingScheme: wrong argument count");
    std::sort(args.begin(), args.end());
    auto it = rank_.find(args);
    if (it == rank_.end()) throw std::invalid_argument("VotingScheme: argument outside alphabet");
    return table_[it->second];
  }

  int value_on_multiset(int index) const { return table_[index]; }

 private:
  int m_, r_;
  std::vector<int> table_;
  std::vector<std::vector<int>> multisets_;
  std::map<std::vector<int>, int> rank_;
};

// Named schemes used throughout the test corpus.

/// Majority vote: m = 3, r = 2.
inline VotingScheme majority_scheme() {
  return VotingScheme::from_function(3, 2, [](const std::vector<int>& a) {
    return (a[0] + a[1] + a[2] >= 2) ? 1 : 0;
  });
}

/// The ternary pair rule with table rows (2,2,0), (2,0,1), (0,1,1): m = 2,
/// r = 3. Balanced and abundant but with no group structure.
inline VotingScheme ternary_pair_scheme() {
  static const int rows[3][3] = {{2, 2, 0}, {2, 0, 1}, {0, 1, 1}};
  return VotingScheme::from_function(2, 3,
                                     [](const std::vector<int>& a) { return rows[a[0]][a[1]]; });
}

/// XOR: the group law on Z/2; the classic non-abundant case.
inline VotingScheme xor_scheme() {
  return VotingScheme::from_function(2, 2,
                                     [](const std::vector<int>& a) { return a[0] ^ a[1]; });
}

struct SchemeValidation {
  bool symmetric = true;  // by construction of the table representation
  bool balanced = false;
  std::vector<long long> preimage_counts;  // over ordered tuples, indexed by value
};

/// Exact preimage counts over all r^m ordered tuples.
inline SchemeValidation validate_scheme(const VotingScheme& scheme) {
  const int m = scheme.arity(), r = scheme.alphabet_size();
  SchemeValidation report;
  report.preimage_counts.assign(r, 0);
  std::vector<int> tuple(m, 0);
  for (;;) {
    ++report.preimage_counts[scheme.apply(tuple)];
    int pos = m - 1;
    while (pos >= 0 && tuple[pos] == r - 1) tuple[pos--] = 0;
    if (pos < 0) break;
    ++tuple[pos];
  }
  report.balanced = std::all_of(
      report.preimage_counts.begin(), report.preimage_counts.end(),
      [&](long long c) { return c == report.preimage_counts[0]; });
  return report;
}

/// The one-variable sections of the scheme: a -> phi(fixed..., a), one per
/// (m-1)-multiset of fixed arguments.
inline std::vector<std::vector<int>> section_maps(const VotingScheme& scheme) {
  const int r = scheme.alphabet_size();
  std::vector<std::vector<int>> sections;
  for (const auto& fixed : enumerate_multisets(scheme.arity() - 1, r)) {
    std::vector<int> section(r);
    for (int a = 0; a < r; ++a) {
      std::vector<int> args = fixed;
      args.push_back(a);
      section[a] = scheme.apply(args);
    }
    sections.push_back(std::move(section));
  }
  return sections;
}

struct AbundanceResult {
  bool abundant = false;
  /// Indices into section_maps(); the composition, first index applied
  /// last, is the constant map below.
  std::vector<int> witness_word;
  int constant_value = -1;
};

inline std::vector<int> compose_maps(const std::vector<int>& outer,
                                     const std::vector<int>& inner) {
  std::vector<int> out(inner.size());
  for (size_t a = 0; a < inner.size(); ++a) out[a] = outer[inner[a]];
  return out;
}

/// Evaluate a witness word against the scheme's sections.
inline std::vector<int> compose_witness(const VotingScheme& scheme,
                                        const std::vector<int>& word) {
  const std::vector<std::vector<int>> sections = section_maps(scheme);
  std::vector<int> map(scheme.alphabet_size());
  for (int a = 0; a < scheme.alphabet_size(); ++a) map[a] = a;
  for (auto it = word.rbegin(); it != word.rend(); ++it) map = compose_maps(sections[*it], map);
  return map;
}

/// Breadth-first closure of the section maps under composition (at most r^r
/// maps); abundant iff some composition is constant. Abundance is the
/// practical sufficient criterion: it implies antiadditivity, hence the
/// absence of additive and multiplicative vectors in the factorization the
/// scheme generates. The character search below is a restricted complement,
/// not a completeness claim.
inline AbundanceResult is_abundant(const VotingScheme& scheme) {
  const int r = scheme.alphabet_size();
  const std::vector<std::vector<int>> sections = section_maps(scheme);
  std::map<std::vector<int>, std::vector<int>> word_of;  // map -> witness word
  std::deque<std::vector<int>> queue;
  auto is_constant = [r](const std::vector<int>& map) {
    for (int a = 1; a < r; ++a)
      if (map[a] != map[0]) return false;
    return true;
  };
  for (size_t i = 0; i < sections.size(); ++i) {
    if (word_of.emplace(sections[i], std::vector<int>{static_cast<int>(i)}).second)
      queue.push_back(sections[i]);
  }
  while (!queue.empty()) {
    const std::vector<int> current = queue.front();
    queue.pop_front();
    if (is_constant(current))
      return {true, word_of[current], current[0]};
    for (size_t i = 0; i < sections.size(); ++i) {
      std::vector<int> next = compose_maps(sections[i], current);
      std::vector<int> word = word_of[current];
      word.insert(word.begin(), static_cast<int>(i));
      auto [it, inserted] = word_of.emplace(std::move(next), std::move(word));
      if (inserted) queue.push_back(it->first);
    }
  }
  return {};
}

namespace detail {

/// Rank of a rational matrix by Gaussian elimination (exact).
inline int rational_matrix_rank(std::vector<std::vector<Rational>> matrix) {
  if (matrix.empty()) return 0;
  const int rows = static_cast<int>(matrix.size());
  const int cols = static_cast<int>(matrix[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int row = rank; row < rows; ++row)
      if (matrix[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) continue;
    std::swap(matrix[rank], matrix[pivot]);
    for (int row = 0; row < rows; ++row) {
      if (row == rank || matrix[row][col] == 0) continue;
      const Rational factor = matrix[row][col] / matrix[rank][col];
      for (int c = col; c < cols; ++c) matrix[row][c] -= factor * matrix[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Dimension of the joint solution space of f(phi(a_1..a_m)) = sum g(a_i)
/// over all tuples, in unknowns (f, g). The constants g = c, f = m c always
/// solve it; the scheme is antiadditive exactly when nothing else does,
/// i.e. when the dimension is 1.
inline int antiadditive_solution_dim(const VotingScheme& scheme) {
  const int r = scheme.alphabet_size();
  const auto& multisets = scheme.multisets();
  std::vector<std::vector<Rational>> matrix;
  for (size_t i = 0; i < multisets.size(); ++i) {
    std::vector<Rational> row(2 * r, Rational(0));
    row[scheme.value_on_multiset(static_cast<int>(i))] += 1;
    for (int v : multisets[i]) row[r + v] -= 1;
    matrix.push_back(std::move(row));
  }
  return 2 * r - detail::rational_matrix_rank(std::move(matrix));
}

/// A solution of f(phi(...)) = prod g(a_i) with values in {0} plus L-th
/// roots of unity. Values are stored as exponents mod L, or -1 for zero;
/// arithmetic on them is exact.
struct CharacterSolution {
  int root_order = 1;
  std::vector<int> g_values;
  std::vector<int> f_values;
};

/// Exhaustive search over all g with values in {0} and L-th roots of unity;
/// returns every solution whose f is nonconstant, verified exactly.
inline std::vector<CharacterSolution> antimultiplicative_search(const VotingScheme& scheme,
                                                                int root_order) {
  if (root_order < 1 || root_order > 12)
    throw std::invalid_argument("antimultiplicative_search: root order must be in 1..12");
  const int r = scheme.alphabet_size();
  const auto& multisets = scheme.multisets();
  double candidates = 1;
  for (int i = 0; i < r; ++i) candidates *= root_order + 1;
  if (candidates > 2e6) throw std::length_error("antimultiplicative_search: alphabet too large");

  std::vector<CharacterSolution> solutions;
  std::vector<int> g(r, -1);  // each in {-1 (zero), 0..L-1}
  for (;;) {
    // derive f from g and check consistency across multisets
    std::vector<int> f(r, -2);  // -2 = unconstrained
    bool consistent = true;
    for (size_t i = 0; i < multisets.size() && consistent; ++i) {
      int product = 0;  // exponent sum; -1 once any factor is zero
      for (int v : multisets[i]) {
        if (g[v] < 0) {
          product = -1;
          break;
        }
        product = (product + g[v]) % root_order;
      }
      const int value = scheme.value_on_multiset(static_cast<int>(i));
      if (f[value] == -2)
        f[value] = product;
      else if (f[value] != product)
        consistent = false;
    }
    if (consistent) {
      bool f_constant = true;
      int first = -3;
      for (int v = 0; v < r; ++v) {
        if (f[v] == -2) continue;  // cannot happen for balanced schemes
        if (first == -3)
          first = f[v];
        else if (f[v] != first)
          f_constant = false;
      }
      if (!f_constant) solutions.push_back({root_order, g, f});
    }
    int pos = r - 1;
    while (pos >= 0 && g[pos] == root_order - 1) g[pos--] = -1;
    if (pos < 0) break;
    ++g[pos];
  }
  return solutions;
}

/// Realization of the hierarchical vote on the m-ary tree: levels[d] holds
/// the m^d values at depth d, the last level being the i.i.d. uniform
/// leaves, and every internal value phi of its children.
struct BallotTree {
  std::vector<std::vector<int>> levels;
  int arity = 2;

  int root() const { return levels.front().front(); }
};

inline constexpr long long kMaxBallotLeaves = 1 << 12;

inline BallotTree sample_ballots(const VotingScheme& scheme, int depth, CounterRng& rng) {
  if (depth < 0) throw std::invalid_argument("sample_ballots: negative depth");
  long long leaves = 1;
  for (int d = 0; d < depth; ++d) {
    leaves *= scheme.arity();
    if (leaves > kMaxBallotLeaves) throw std::length_error("sample_ballots: tree too large");
  }
  BallotTree tree;
  tree.arity = scheme.arity();
  tree.levels.resize(depth + 1);
  tree.levels[depth].resize(leaves);
  for (long long i = 0; i < leaves; ++i)
    tree.levels[depth][i] =
        static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(scheme.alphabet_size())));
  for (int d = depth - 1; d >= 0; --d) {
    const auto& below = tree.levels[d + 1];
    auto& level = tree.levels[d];
    level.resize(below.size() / scheme.arity());
    std::vector<int> args(scheme.arity());
    for (size_t v = 0; v < level.size(); ++v) {
      for (int c = 0; c < scheme.arity(); ++c) args[c] = below[v * scheme.arity() + c];
      level[v] = scheme.apply(args);
    }
  }
  return tree;
}

/// Plain-text format: first line "m r", then one value per multiset in the
/// canonical order of enumerate_multisets.
inline VotingScheme read_scheme(std::istream& in) {
  int m = 0, r = 0;
  if (!(in >> m >> r)) throw std::invalid_argument("read_scheme: missing header");
  const size_t expected = enumerate_multisets(m, r).size();
  std::vector<int> table;
  int value;
  while (table.size() < expected && (in >> value)) table.push_back(value);
  if (table.size() != expected) throw std::invalid_argument("read_scheme: incomplete table");
  return VotingScheme(m, r, std::move(table));
}

}  // namespace levygauss
