#pragma once

// Partition diagrams: set partitions of m upper and n lower points.
//
// Points are encoded 0..m-1 (upper, rendered 1..m) and m..m+n-1 (lower,
// rendered 1'..n'). Blocks are kept sorted internally and ordered by their
// minimum point, so structural equality is diagram equality.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diagcat/error.hpp"

namespace diagcat {

namespace detail {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t i) {
    std::size_t r = i;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[i] != r) {
      const std::size_t next = parent_[i];
      parent_[i] = r;
      i = next;
    }
    return r;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace detail

/// Calls visit(labels, block_count) for every set partition of {0..n-1},
/// given as a restricted growth string.
template <class Visit>
void for_each_set_partition(int n, Visit&& visit) {
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);
  if (n == 0) {
    visit(std::span<const int>(labels), 0);
    return;
  }
  for (;;) {
    visit(std::span<const int>(labels), prefix_max[static_cast<std::size_t>(n - 1)] + 1);
    int i = n - 1;
    while (i > 0 && labels[static_cast<std::size_t>(i)] > prefix_max[static_cast<std::size_t>(i - 1)]) --i;
    if (i == 0) return;
    ++labels[static_cast<std::size_t>(i)];
    prefix_max[static_cast<std::size_t>(i)] =
        std::max(prefix_max[static_cast<std::size_t>(i - 1)], labels[static_cast<std::size_t>(i)]);
    for (int k = i + 1; k < n; ++k) {
      labels[static_cast<std::size_t>(k)] = 0;
      prefix_max[static_cast<std::size_t>(k)] = prefix_max[static_cast<std::size_t>(i)];
    }
  }
}

class PartitionDiagram {
public:
  using Block = std::vector<int>;

  PartitionDiagram() = default;

  /// Validates that `blocks` partition {0..m+n-1} and canonicalizes.
  PartitionDiagram(int m, int n, std::vector<Block> blocks) : m_(m), n_(n), blocks_(std::move(blocks)) {
    if (m < 0 || n < 0) throw Error("negative point count");
    std::vector<char> seen(static_cast<std::size_t>(m + n), 0);
    for (auto& b : blocks_) {
      if (b.empty()) throw Error("empty block");
      for (int p : b) {
        if (p < 0 || p >= m + n) throw Error("point out of range");
        if (seen[static_cast<std::size_t>(p)]) throw Error("duplicate point");
        seen[static_cast<std::size_t>(p)] = 1;
      }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw Error("missing point");
    canonicalize();
  }

  /// labels[p] identifies the block of point p; labels need not be normalized.
  static PartitionDiagram from_labels(int m, int n, std::span<const int> labels) {
    std::vector<Block> blocks;
    std::vector<int> slot;
    for (int p = 0; p < m + n; ++p) {
      const int l = labels[static_cast<std::size_t>(p)];
      if (l >= static_cast<int>(slot.size())) slot.resize(static_cast<std::size_t>(l) + 1, -1);
      if (slot[static_cast<std::size_t>(l)] < 0) {
        slot[static_cast<std::size_t>(l)] = static_cast<int>(blocks.size());
        blocks.emplace_back();
      }
      blocks[static_cast<std::size_t>(slot[static_cast<std::size_t>(l)])].push_back(p);
    }
    PartitionDiagram d;
    d.m_ = m;
    d.n_ = n;
    d.blocks_ = std::move(blocks);
    d.canonicalize();
    return d;
  }

  static PartitionDiagram identity(int j) {
    std::vector<Block> blocks;
    for (int i = 0; i < j; ++i) blocks.push_back({i, j + i});
    return PartitionDiagram(j, j, std::move(blocks));
  }

  /// Permutation diagram sending upper point i to lower point perm[i].
  static PartitionDiagram permutation(std::span<const int> perm) {
    const int j = static_cast<int>(perm.size());
    std::vector<Block> blocks;
    for (int i = 0; i < j; ++i) blocks.push_back({i, j + perm[static_cast<std::size_t>(i)]});
    return PartitionDiagram(j, j, std::move(blocks));
  }

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  int total_points() const noexcept { return m_ + n_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  bool is_upper(int p) const noexcept { return p < m_; }

  /// Restricted growth labels: labels[p] = index of p's block.
  std::vector<int> labels() const {
    std::vector<int> l(static_cast<std::size_t>(m_ + n_));
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      for (int p : blocks_[b]) l[static_cast<std::size_t>(p)] = static_cast<int>(b);
    return l;
  }

  friend bool operator==(const PartitionDiagram&, const PartitionDiagram&) = default;
  friend auto operator<=>(const PartitionDiagram& a, const PartitionDiagram& b) {
    if (auto c = a.m_ <=> b.m_; c != 0) return c;
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.blocks_ <=> b.blocks_;
  }

  std::size_t hash() const noexcept {
    std::size_t h = static_cast<std::size_t>(m_) * 1000003u ^ static_cast<std::size_t>(n_);
    for (const auto& b : blocks_) {
      for (int p : b) h = h * 31u + static_cast<std::size_t>(p);
      h = h * 131u + 7u;
    }
    return h;
  }

private:
  void canonicalize() {
    for (auto& b : blocks_) std::sort(b.begin(), b.end());
    std::sort(blocks_.begin(), blocks_.end(), [](const Block& x, const Block& y) { return x.front() < y.front(); });
  }

  int m_ = 0;
  int n_ = 0;
  std::vector<Block> blocks_;
};

struct DiagramHash {
  std::size_t operator()(const PartitionDiagram& d) const noexcept { return d.hash(); }
};

enum class DiagramClass { All, EvenBlocks, EvenManyOddBlocks, BlocksSize2, NonCrossingSize2 };

inline constexpr DiagramClass kAllDiagramClasses[] = {DiagramClass::All, DiagramClass::EvenBlocks,
                                                      DiagramClass::EvenManyOddBlocks, DiagramClass::BlocksSize2,
                                                      DiagramClass::NonCrossingSize2};

inline std::string_view to_string(DiagramClass c) {
  switch (c) {
    case DiagramClass::All: return "All";
    case DiagramClass::EvenBlocks: return "EvenBlocks";
    case DiagramClass::EvenManyOddBlocks: return "EvenManyOddBlocks";
    case DiagramClass::BlocksSize2: return "BlocksSize2";
    case DiagramClass::NonCrossingSize2: return "NonCrossingSize2";
  }
  return "?";
}

/// Accepts the tag names plus the category aliases S, H, Sprime, Brauer, TL.
inline DiagramClass parse_diagram_class(std::string_view s) {
  for (DiagramClass c : kAllDiagramClasses)
    if (s == to_string(c)) return c;
  if (s == "S" || s == "all") return DiagramClass::All;
  if (s == "H" || s == "even") return DiagramClass::EvenBlocks;
  if (s == "Sprime" || s == "S'") return DiagramClass::EvenManyOddBlocks;
  if (s == "Brauer") return DiagramClass::BlocksSize2;
  if (s == "TL") return DiagramClass::NonCrossingSize2;
  throw Error("unknown diagram class '" + std::string(s) + "'");
}

struct ComposeResult {
  PartitionDiagram diagram;
  int loops = 0;
};

/// g ∘ f: glue f's lower points to g's upper points. Merged components that
/// touch no outer point are removed and counted in `loops`.
inline ComposeResult compose(const PartitionDiagram& g, const PartitionDiagram& f) {
  if (f.n() != g.m()) {
    throw Error("shape mismatch: cannot compose P(" + std::to_string(g.m()) + "," + std::to_string(g.n()) +
                ") after P(" + std::to_string(f.m()) + "," + std::to_string(f.n()) + ")");
  }
  const int m = f.m();
  const int k = f.n();
  const int n = g.n();
  // 0..m-1 outer upper, m..m+k-1 middle, m+k..m+k+n-1 outer lower.
  detail::UnionFind uf(static_cast<std::size_t>(m + k + n));
  for (const auto& b : f.blocks())
    for (std::size_t i = 1; i < b.size(); ++i) uf.unite(static_cast<std::size_t>(b[0]), static_cast<std::size_t>(b[i]));
  for (const auto& b : g.blocks())
    for (std::size_t i = 1; i < b.size(); ++i)
      uf.unite(static_cast<std::size_t>(m + b[0]), static_cast<std::size_t>(m + b[i]));

  std::vector<int> has_outer(static_cast<std::size_t>(m + k + n), 0);
  std::vector<int> labels(static_cast<std::size_t>(m + n));
  for (int p = 0; p < m; ++p) {
    const auto r = uf.find(static_cast<std::size_t>(p));
    has_outer[r] = 1;
    labels[static_cast<std::size_t>(p)] = static_cast<int>(r);
  }
  for (int p = 0; p < n; ++p) {
    const auto r = uf.find(static_cast<std::size_t>(m + k + p));
    has_outer[r] = 1;
    labels[static_cast<std::size_t>(m + p)] = static_cast<int>(r);
  }
  int loops = 0;
  std::vector<char> counted(static_cast<std::size_t>(m + k + n), 0);
  for (int p = m; p < m + k; ++p) {
    const auto r = uf.find(static_cast<std::size_t>(p));
    if (!has_outer[r] && !counted[r]) {
      counted[r] = 1;
      ++loops;
    }
  }
  return {PartitionDiagram::from_labels(m, n, labels), loops};
}

/// Side-by-side juxtaposition: g's points follow f's on both rows.
inline PartitionDiagram tensor(const PartitionDiagram& f, const PartitionDiagram& g) {
  const int m = f.m() + g.m();
  const int n = f.n() + g.n();
  auto place_f = [&](int p) { return p < f.m() ? p : g.m() + p; };
  auto place_g = [&](int p) { return p < g.m() ? f.m() + p : f.m() + f.n() + p; };
  std::vector<PartitionDiagram::Block> blocks;
  blocks.reserve(f.block_count() + g.block_count());
  for (const auto& b : f.blocks()) {
    PartitionDiagram::Block nb;
    for (int p : b) nb.push_back(place_f(p));
    blocks.push_back(std::move(nb));
  }
  for (const auto& b : g.blocks()) {
    PartitionDiagram::Block nb;
    for (int p : b) nb.push_back(place_g(p));
    blocks.push_back(std::move(nb));
  }
  return PartitionDiagram(m, n, std::move(blocks));
}

/// Merges groups of blocks: group_of[b] is the target group of block b.
inline PartitionDiagram merge_blocks(const PartitionDiagram& f, std::span<const int> group_of) {
  std::vector<int> labels(static_cast<std::size_t>(f.total_points()));
  const auto& blocks = f.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int p : blocks[b]) labels[static_cast<std::size_t>(p)] = group_of[b];
  return PartitionDiagram::from_labels(f.m(), f.n(), labels);
}

/// All diagrams obtained by merging blocks of f (excluding f when `proper`).
inline std::vector<PartitionDiagram> coarsenings(const PartitionDiagram& f, bool proper) {
  std::vector<PartitionDiagram> out;
  const int r = static_cast<int>(f.block_count());
  for_each_set_partition(r, [&](std::span<const int> labels, int groups) {
    if (proper && groups == r) return;
    out.push_back(merge_blocks(f, labels));
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Every diagram in P_{m,n}, in canonical order.
inline std::vector<PartitionDiagram> enumerate_diagrams(int m, int n) {
  std::vector<PartitionDiagram> out;
  for_each_set_partition(m + n, [&](std::span<const int> labels, int) {
    out.push_back(PartitionDiagram::from_labels(m, n, labels));
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Position of point p on the boundary circle of the rectangle: upper points
/// left to right, then lower points right to left.
inline int boundary_position(const PartitionDiagram& d, int p) {
  return p < d.m() ? p : d.m() + (d.total_points() - 1 - p);
}

inline bool is_noncrossing_pairing(const PartitionDiagram& d) {
  std::vector<std::pair<int, int>> chords;
  for (const auto& b : d.blocks()) {
    if (b.size() != 2) return false;
    int a = boundary_position(d, b[0]);
    int c = boundary_position(d, b[1]);
    if (a > c) std::swap(a, c);
    chords.emplace_back(a, c);
  }
  for (std::size_t i = 0; i < chords.size(); ++i)
    for (std::size_t j = i + 1; j < chords.size(); ++j) {
      const auto [a, b] = chords[i];
      const auto [c, e] = chords[j];
      const bool interleave = (a < c && c < b && b < e) || (c < a && a < e && e < b);
      if (interleave) return false;
    }
  return true;
}

inline bool class_member(const PartitionDiagram& f, DiagramClass c) {
  switch (c) {
    case DiagramClass::All:
      return true;
    case DiagramClass::EvenBlocks:
      return std::all_of(f.blocks().begin(), f.blocks().end(), [](const auto& b) { return b.size() % 2 == 0; });
    case DiagramClass::EvenManyOddBlocks: {
      const auto odd = std::count_if(f.blocks().begin(), f.blocks().end(), [](const auto& b) { return b.size() % 2 == 1; });
      return odd % 2 == 0;
    }
    case DiagramClass::BlocksSize2:
      return std::all_of(f.blocks().begin(), f.blocks().end(), [](const auto& b) { return b.size() == 2; });
    case DiagramClass::NonCrossingSize2:
      return is_noncrossing_pairing(f);
  }
  return false;
}

/// True iff no block joins an upper point to a lower point, i.e. f = v ∘ u
/// with u: [m] → [0] and v: [0] → [n].
inline bool factors_through_unit(const PartitionDiagram& f) {
  for (const auto& b : f.blocks()) {
    const bool upper = b.front() < f.m();
    const bool lower = b.back() >= f.m();
    if (upper && lower) return false;
  }
  return true;
}

/// Splits a through-unit diagram into (upper part in P_{m,0}, lower part in P_{0,n}).
inline std::pair<PartitionDiagram, PartitionDiagram> split_through_unit(const PartitionDiagram& f) {
  if (!factors_through_unit(f)) throw Error("diagram does not factor through the unit");
  std::vector<PartitionDiagram::Block> up, down;
  for (const auto& b : f.blocks()) {
    if (b.front() < f.m()) {
      up.push_back(b);
    } else {
      PartitionDiagram::Block nb;
      for (int p : b) nb.push_back(p - f.m());
      down.push_back(std::move(nb));
    }
  }
  return {PartitionDiagram(f.m(), 0, std::move(up)), PartitionDiagram(0, f.n(), std::move(down))};
}

/// Restriction of f to its upper points (the partition "induced on the upper points").
inline PartitionDiagram upper_restriction(const PartitionDiagram& f) {
  std::vector<PartitionDiagram::Block> blocks;
  for (const auto& b : f.blocks()) {
    PartitionDiagram::Block nb;
    for (int p : b)
      if (p < f.m()) nb.push_back(p);
    if (!nb.empty()) blocks.push_back(std::move(nb));
  }
  return PartitionDiagram(f.m(), 0, std::move(blocks));
}

// ---- text format: "1 1' | 2 2'"; the empty diagram is "<empty>" ----

inline std::string to_string(const PartitionDiagram& d) {
  if (d.total_points() == 0) return "<empty>";
  std::string out;
  for (std::size_t b = 0; b < d.blocks().size(); ++b) {
    if (b) out += " | ";
    bool first = true;
    for (int p : d.blocks()[b]) {
      if (!first) out += ' ';
      first = false;
      if (p < d.m()) out += std::to_string(p + 1);
      else out += std::to_string(p - d.m() + 1) + "'";
    }
  }
  return out;
}

/// Shape is inferred from the largest upper and lower labels unless given.
inline PartitionDiagram parse_diagram(std::string_view text, int expect_m = -1, int expect_n = -1) {
  struct Point {
    int label;
    bool lower;
    std::size_t pos;
  };
  std::vector<std::vector<Point>> blocks(1);
  std::size_t i = 0;
  auto trimmed = [&]() {
    std::size_t a = 0, b = text.size();
    while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
    return text.substr(a, b - a);
  }();
  if (trimmed == "<empty>" || trimmed.empty()) {
    if ((expect_m > 0) || (expect_n > 0)) throw ParseError("missing point 1", 0);
    return PartitionDiagram();
  }
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '|') {
      if (blocks.back().empty()) throw ParseError("empty block", i);
      blocks.emplace_back();
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      const int label = std::stoi(std::string(text.substr(start, i - start)));
      if (label < 1) throw ParseError("point labels start at 1", start);
      bool lower = false;
      if (i < text.size() && text[i] == '\'') {
        lower = true;
        ++i;
      }
      blocks.back().push_back({label, lower, start});
    } else {
      throw ParseError("malformed token '" + std::string(1, c) + "'", i);
    }
  }
  if (blocks.back().empty()) throw ParseError("empty block", text.size());

  int m = 0, n = 0;
  for (const auto& b : blocks)
    for (const auto& p : b) (p.lower ? n : m) = std::max(p.lower ? n : m, p.label);
  if (expect_m >= 0) {
    if (m > expect_m) throw ParseError("point " + std::to_string(m) + " exceeds upper count", 0);
    m = expect_m;
  }
  if (expect_n >= 0) {
    if (n > expect_n) throw ParseError("point " + std::to_string(n) + "' exceeds lower count", 0);
    n = expect_n;
  }
  std::vector<char> seen(static_cast<std::size_t>(m + n), 0);
  std::vector<PartitionDiagram::Block> out;
  for (const auto& b : blocks) {
    PartitionDiagram::Block nb;
    for (const auto& p : b) {
      const int idx = p.lower ? m + p.label - 1 : p.label - 1;
      if (seen[static_cast<std::size_t>(idx)]) {
        throw ParseError("duplicate point " + std::to_string(p.label) + (p.lower ? "'" : ""), p.pos);
      }
      seen[static_cast<std::size_t>(idx)] = 1;
      nb.push_back(idx);
    }
    out.push_back(std::move(nb));
  }
  for (int p = 0; p < m + n; ++p) {
    if (!seen[static_cast<std::size_t>(p)]) {
      const std::string name = p < m ? std::to_string(p + 1) : std::to_string(p - m + 1) + "'";
      throw ParseError("missing point " + name, text.size());
    }
  }
  return PartitionDiagram(m, n, std::move(out));
}

}  // namespace diagcat

template <>
struct std::hash<diagcat::PartitionDiagram> {
  std::size_t operator()(const diagcat::PartitionDiagram& d) const noexcept { return d.hash(); }
};
