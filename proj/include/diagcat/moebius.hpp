#pragma once

// Möbius idempotents on the coarsening lattice, symmetrizers, and the
// special morphisms p_j and e_1 used by the representability checks.

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>
#include <vector>

#include "diagcat/homspace.hpp"
#include "diagcat/partition.hpp"
#include "diagcat/scalar.hpp"

namespace diagcat {

using IntCombination = std::map<PartitionDiagram, long long>;

namespace detail {

// x(f) = f - sum over proper coarsenings f' of x(f'), where only blocks whose
// points are flagged movable may merge. The flags are per point and stay valid
// along the recursion because unmovable blocks are never touched.
inline IntCombination lattice_moebius(const PartitionDiagram& f, const std::vector<char>& movable) {
  static std::recursive_mutex mutex;
  static std::map<std::pair<PartitionDiagram, std::vector<char>>, IntCombination> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(f, movable);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const auto& blocks = f.blocks();
  std::vector<int> mov;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (movable[static_cast<std::size_t>(blocks[b].front())]) mov.push_back(static_cast<int>(b));
  const int r = static_cast<int>(mov.size());

  IntCombination out;
  out[f] = 1;
  std::vector<int> group_of(blocks.size());
  for_each_set_partition(r, [&](std::span<const int> labels, int groups) {
    if (groups == r) return;
    int fresh = r;
    for (std::size_t b = 0; b < blocks.size(); ++b) group_of[b] = fresh++;
    for (int i = 0; i < r; ++i) group_of[static_cast<std::size_t>(mov[static_cast<std::size_t>(i)])] = labels[static_cast<std::size_t>(i)];
    for (const auto& [d, c] : lattice_moebius(merge_blocks(f, group_of), movable)) out[d] -= c;
  });
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  cache.emplace(std::move(key), out);
  return out;
}

inline LinMorphism to_morphism(const PartitionDiagram& shape, const IntCombination& comb, const FieldSpec& field) {
  LinMorphism out(shape.m(), shape.n());
  for (const auto& [d, c] : comb) out.add_term(d, field.constant(Rational(static_cast<long>(c))));
  return out;
}

}  // namespace detail

/// Integer coefficients of x(f) over the coarsenings of f.
inline IntCombination moebius_x_coefficients(const PartitionDiagram& f) {
  return detail::lattice_moebius(f, std::vector<char>(static_cast<std::size_t>(f.total_points()), 1));
}

inline LinMorphism moebius_x(const PartitionDiagram& f, const FieldSpec& field) {
  return detail::to_morphism(f, moebius_x_coefficients(f), field);
}

/// x'(f): the same recursion, restricted to coarsenings that keep every even
/// block without lower points intact. Blocks that meet a lower point or have
/// odd size may merge.
inline IntCombination moebius_x_prime_coefficients(const PartitionDiagram& f) {
  std::vector<char> movable(static_cast<std::size_t>(f.total_points()), 0);
  for (const auto& b : f.blocks()) {
    const bool lower = std::any_of(b.begin(), b.end(), [&](int p) { return !f.is_upper(p); });
    if (lower || b.size() % 2 == 1)
      for (int p : b) movable[static_cast<std::size_t>(p)] = 1;
  }
  return detail::lattice_moebius(f, movable);
}

inline LinMorphism moebius_x_prime(const PartitionDiagram& f, const FieldSpec& field) {
  return detail::to_morphism(f, moebius_x_prime_coefficients(f), field);
}

/// x_j = x(id_j)
inline LinMorphism moebius_xj(int j, const FieldSpec& field) { return moebius_x(PartitionDiagram::identity(j), field); }

/// e_j: the average of the j! permutation diagrams.
inline LinMorphism symmetrizer(int j, const FieldSpec& field) {
  std::vector<int> perm(static_cast<std::size_t>(j));
  std::iota(perm.begin(), perm.end(), 0);
  Integer fact = 1;
  for (int i = 2; i <= j; ++i) fact *= i;
  const FieldElement weight = field.constant(Rational(Integer(1), fact));
  LinMorphism out(j, j);
  do {
    out.add_term(PartitionDiagram::permutation(perm), weight);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// x_j ∘ e_j
inline LinMorphism moebius_xe(int j, const FieldSpec& field) {
  return compose(moebius_xj(j, field), symmetrizer(j, field), field);
}

/// p_j: j singleton blocks, no lower points.
inline PartitionDiagram p_diagram(int j) {
  std::vector<PartitionDiagram::Block> blocks;
  for (int i = 0; i < j; ++i) blocks.push_back({i});
  return PartitionDiagram(j, 0, std::move(blocks));
}

inline LinMorphism p_morphism(int j, const FieldSpec& field) { return diagram_morphism(p_diagram(j), field); }

/// e_1 = t⁻¹ · {{1},{1'}} on [1]; requires t ≠ 0.
inline LinMorphism e1_sprime(const FieldSpec& field) {
  if (!field.t_nonzero()) throw Error("requires t ≠ 0");
  return LinMorphism(PartitionDiagram(1, 1, {{0}, {1}}), field.t_power(-1));
}

enum class SpecialMorphism { P, E1Sprime };

inline LinMorphism special_morphisms(SpecialMorphism which, int j, const FieldSpec& field) {
  return which == SpecialMorphism::P ? p_morphism(j, field) : e1_sprime(field);
}

}  // namespace diagcat
