#pragma once

// Two-dimensional cobordisms modulo the relations of a Frobenius algebra
// datum (α, u). A cobordism is stored as its combinatorial invariant: which
// boundary circles each component touches, and the component's genus.

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diagcat/error.hpp"
#include "diagcat/homspace.hpp"
#include "diagcat/partition.hpp"
#include "diagcat/scalar.hpp"

namespace diagcat {

/// α given by initial values α_0..α_{d-1}, extended by the recurrence
/// α_{j+d} = -Σ_{i<d} u_i α_{i+j}; u is monic of degree d.
class FrobeniusDatum {
public:
  FrobeniusDatum(std::vector<FieldElement> alpha_init, Poly u, FieldSpec field)
      : alpha_init_(std::move(alpha_init)), u_(std::move(u)), field_(std::move(field)) {}

  const std::vector<FieldElement>& alpha_init() const noexcept { return alpha_init_; }
  const Poly& u() const noexcept { return u_; }
  const FieldSpec& field() const noexcept { return field_; }
  int degree() const noexcept { return static_cast<int>(u_.degree()); }

  FieldElement alpha(long i) const {
    const auto d = static_cast<std::size_t>(degree());
    std::vector<FieldElement> seq = alpha_init_;
    while (static_cast<long>(seq.size()) <= i) {
      const std::size_t j = seq.size() - d;
      FieldElement next = field_.zero();
      for (std::size_t k = 0; k < d; ++k) next -= field_.constant(u_.coeff(k)) * seq[j + k];
      seq.push_back(next);
    }
    return seq[static_cast<std::size_t>(i)];
  }

  /// Coefficients of x^g mod u, indexed by degree < deg u.
  std::vector<Rational> reduce_power(long g) const {
    auto [q, r] = poly_divmod(Poly::monomial(Rational(1), static_cast<std::size_t>(g)), u_);
    std::vector<Rational> out(static_cast<std::size_t>(degree()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = r.coeff(i);
    return out;
  }

private:
  std::vector<FieldElement> alpha_init_;
  Poly u_;
  FieldSpec field_;
};

inline FrobeniusDatum validate_datum(std::vector<FieldElement> alpha_init, Poly u, const FieldSpec& field) {
  if (u.degree() < 1) throw Error("u must have degree at least 1");
  if (u.lead() != 1) throw Error("u must be monic, leading coefficient is " + rational_to_string(u.lead()));
  if (static_cast<long>(alpha_init.size()) != u.degree()) {
    throw Error("expected " + std::to_string(u.degree()) + " initial alpha values, got " +
                std::to_string(alpha_init.size()));
  }
  for (auto& a : alpha_init) a = field.coerce(a);
  return FrobeniusDatum(std::move(alpha_init), std::move(u), field);
}

/// α = (t, t, ...), u = x - 1
inline FrobeniusDatum st_datum(const FieldSpec& field) {
  return validate_datum({field.t()}, Poly(std::vector<Rational>{Rational(-1), Rational(1)}), field);
}

/// α = (1, 2, 3, 5, ...), u = x² - x - 1
inline FrobeniusDatum fibonacci_datum(const FieldSpec& field) {
  return validate_datum({field.one(), field.constant(2)},
                        Poly(std::vector<Rational>{Rational(-1), Rational(-1), Rational(1)}), field);
}

/// A cobordism [m] → [n] without closed components. Circles use the diagram
/// encoding: upper 0..m-1, lower m..m+n-1. genus()[b] belongs to shape().blocks()[b].
class Cobordism {
public:
  Cobordism() = default;
  Cobordism(PartitionDiagram shape, std::vector<int> genus) : shape_(std::move(shape)), genus_(std::move(genus)) {
    if (genus_.size() != shape_.block_count()) throw Error("one genus per component required");
    for (int g : genus_)
      if (g < 0) throw Error("genus must be nonnegative");
  }

  /// Components in any order; canonicalized here.
  static Cobordism from_components(int m, int n, std::vector<std::pair<PartitionDiagram::Block, int>> comps) {
    for (auto& [b, g] : comps) std::sort(b.begin(), b.end());
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.first.front() < b.first.front(); });
    std::vector<PartitionDiagram::Block> blocks;
    std::vector<int> genus;
    for (auto& [b, g] : comps) {
      blocks.push_back(std::move(b));
      genus.push_back(g);
    }
    return Cobordism(PartitionDiagram(m, n, std::move(blocks)), std::move(genus));
  }

  static Cobordism from_diagram(const PartitionDiagram& d) {
    return Cobordism(d, std::vector<int>(d.block_count(), 0));
  }

  int m() const noexcept { return shape_.m(); }
  int n() const noexcept { return shape_.n(); }
  const PartitionDiagram& shape() const noexcept { return shape_; }
  const std::vector<int>& genus() const noexcept { return genus_; }

  friend bool operator==(const Cobordism&, const Cobordism&) = default;
  friend auto operator<=>(const Cobordism& a, const Cobordism& b) {
    if (auto c = a.shape_ <=> b.shape_; c != 0) return c;
    return a.genus_ <=> b.genus_;
  }

private:
  PartitionDiagram shape_;
  std::vector<int> genus_;
};

using CobCombination = std::map<Cobordism, FieldElement>;

inline void add_to(CobCombination& acc, const Cobordism& c, const FieldElement& x) {
  if (x.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(c, x);
  if (!inserted) {
    it->second += x;
    if (it->second.is_zero()) acc.erase(it);
  }
}

/// Components with arbitrary genus, possibly closed (empty circle list).
struct RawCobordism {
  int m = 0;
  int n = 0;
  std::vector<std::pair<PartitionDiagram::Block, long>> components;
};

/// Closed genus-i components become α(i); genus ≥ deg u is rewritten by x^g mod u.
inline CobCombination reduce_normal_form(const RawCobordism& c, const FrobeniusDatum& datum) {
  const FieldSpec& field = datum.field();
  FieldElement scalar = field.one();
  std::vector<std::pair<PartitionDiagram::Block, long>> open;
  for (const auto& comp : c.components) {
    if (comp.first.empty()) scalar *= datum.alpha(comp.second);
    else open.push_back(comp);
  }
  // Expand the product over open components of (Σ_i r_i x^i).
  std::vector<std::pair<std::vector<int>, FieldElement>> partial = {{{}, scalar}};
  for (const auto& [circles, g] : open) {
    std::vector<std::pair<int, Rational>> options;
    if (g < datum.degree()) {
      options.emplace_back(static_cast<int>(g), Rational(1));
    } else {
      auto r = datum.reduce_power(g);
      for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] != 0) options.emplace_back(static_cast<int>(i), r[i]);
    }
    std::vector<std::pair<std::vector<int>, FieldElement>> next;
    for (const auto& [gs, x] : partial)
      for (const auto& [gi, ri] : options) {
        auto ng = gs;
        ng.push_back(gi);
        next.emplace_back(std::move(ng), x * field.constant(ri));
      }
    partial = std::move(next);
  }
  CobCombination out;
  for (auto& [gs, x] : partial) {
    std::vector<std::pair<PartitionDiagram::Block, int>> comps;
    for (std::size_t k = 0; k < open.size(); ++k) comps.emplace_back(open[k].first, gs[k]);
    add_to(out, Cobordism::from_components(c.m, c.n, std::move(comps)), x);
  }
  return out;
}

inline CobCombination reduce_normal_form(const Cobordism& c, const FrobeniusDatum& datum) {
  RawCobordism raw{c.m(), c.n(), {}};
  for (std::size_t b = 0; b < c.genus().size(); ++b) raw.components.emplace_back(c.shape().blocks()[b], c.genus()[b]);
  return reduce_normal_form(raw, datum);
}

/// Glues g after f along f's lower circles. A merged component built from
/// parts of genus g_i with b_i circles each, leaving r free circles, has genus
/// 1 - (r + Σ(2 - 2g_i - b_i)) / 2 (Euler characteristic is additive under
/// gluing along circles).
inline RawCobordism glue_raw(const Cobordism& g, const Cobordism& f) {
  if (f.n() != g.m()) {
    throw Error("shape mismatch: cannot glue [" + std::to_string(g.m()) + "]→[" + std::to_string(g.n()) + "] after [" +
                std::to_string(f.m()) + "]→[" + std::to_string(f.n()) + "]");
  }
  const int m = f.m(), k = f.n();
  const auto& fb = f.shape().blocks();
  const auto& gb = g.shape().blocks();
  const std::size_t nf = fb.size();
  detail::UnionFind uf(nf + gb.size());
  std::vector<std::size_t> f_comp_of_middle(static_cast<std::size_t>(k)), g_comp_of_middle(static_cast<std::size_t>(k));
  for (std::size_t b = 0; b < nf; ++b)
    for (int p : fb[b])
      if (p >= m) f_comp_of_middle[static_cast<std::size_t>(p - m)] = b;
  for (std::size_t b = 0; b < gb.size(); ++b)
    for (int p : gb[b])
      if (p < k) g_comp_of_middle[static_cast<std::size_t>(p)] = nf + b;
  for (int c = 0; c < k; ++c) uf.unite(f_comp_of_middle[static_cast<std::size_t>(c)], g_comp_of_middle[static_cast<std::size_t>(c)]);

  struct Acc {
    PartitionDiagram::Block free;
    long chi_parts = 0;  // Σ (2 - 2g_i - b_i)
  };
  std::map<std::size_t, Acc> groups;
  for (std::size_t b = 0; b < nf; ++b) {
    Acc& a = groups[uf.find(b)];
    a.chi_parts += 2 - 2L * f.genus()[b] - static_cast<long>(fb[b].size());
    for (int p : fb[b])
      if (p < m) a.free.push_back(p);
  }
  for (std::size_t b = 0; b < gb.size(); ++b) {
    Acc& a = groups[uf.find(nf + b)];
    a.chi_parts += 2 - 2L * g.genus()[b] - static_cast<long>(gb[b].size());
    for (int p : gb[b])
      if (p >= k) a.free.push_back(m + p - k);
  }
  RawCobordism out{m, g.n(), {}};
  for (auto& [root, a] : groups) {
    const long r = static_cast<long>(a.free.size());
    const long twice = 2 - (r + a.chi_parts);
    if (twice % 2 != 0 || twice < 0) throw Error("inconsistent genus bookkeeping");
    out.components.emplace_back(std::move(a.free), twice / 2);
  }
  return out;
}

inline CobCombination glue(const Cobordism& g, const Cobordism& f, const FrobeniusDatum& datum) {
  return reduce_normal_form(glue_raw(g, f), datum);
}

inline CobCombination glue(const CobCombination& g, const CobCombination& f, const FrobeniusDatum& datum) {
  CobCombination out;
  for (const auto& [cg, xg] : g)
    for (const auto& [cf, xf] : f)
      for (const auto& [c, x] : glue(cg, cf, datum)) add_to(out, c, xg * xf * x);
  return out;
}

inline CobCombination single(const Cobordism& c, const FieldSpec& field) { return {{c, field.one()}}; }

// ---- generators ----

inline Cobordism cob_identity(int j) { return Cobordism::from_diagram(PartitionDiagram::identity(j)); }
inline Cobordism cob_mu() { return Cobordism::from_diagram(PartitionDiagram(2, 1, {{0, 1, 2}})); }
inline Cobordism cob_delta() { return Cobordism::from_diagram(PartitionDiagram(1, 2, {{0, 1, 2}})); }
inline Cobordism cob_eta() { return Cobordism::from_diagram(PartitionDiagram(0, 1, {{0}})); }
inline Cobordism cob_epsilon() { return Cobordism::from_diagram(PartitionDiagram(1, 0, {{0}})); }
inline Cobordism cob_empty() { return Cobordism(); }

/// φ = μ∘Δ, reduced.
inline CobCombination cob_phi(const FrobeniusDatum& datum) { return glue(cob_mu(), cob_delta(), datum); }

/// Coefficient of the empty cobordism in ε∘φ^i∘η.
inline FieldElement frobenius_trace(int i, const FrobeniusDatum& datum) {
  const FieldSpec& field = datum.field();
  CobCombination acc = single(cob_eta(), field);
  const CobCombination phi = cob_phi(datum);
  for (int s = 0; s < i; ++s) acc = glue(phi, acc, datum);
  acc = glue(single(cob_epsilon(), field), acc, datum);
  auto it = acc.find(cob_empty());
  if (acc.size() > 1) throw Error("closed cobordism did not reduce to a scalar");
  return it == acc.end() ? field.zero() : it->second;
}

/// All normal-form cobordisms [m] → [n] with every genus ≤ max_genus (and < deg u).
inline std::vector<Cobordism> enumerate_cobordisms(int m, int n, int max_genus) {
  std::vector<Cobordism> out;
  for (const auto& d : enumerate_diagrams(m, n)) {
    std::vector<int> genus(d.block_count(), 0);
    for (;;) {
      out.emplace_back(d, genus);
      std::size_t i = 0;
      while (i < genus.size() && genus[i] == max_genus) genus[i++] = 0;
      if (i == genus.size()) break;
      ++genus[i];
    }
  }
  return out;
}

/// Glue under the S_t datum agrees with partition composition times t^loops.
inline bool partition_crosscheck(const PartitionDiagram& f, const PartitionDiagram& g, const FieldSpec& field) {
  const FrobeniusDatum datum = st_datum(field);
  CobCombination glued = glue(Cobordism::from_diagram(g), Cobordism::from_diagram(f), datum);
  ComposeResult r = compose(g, f);
  if (glued.size() != 1) return false;
  const auto& [c, x] = *glued.begin();
  if (std::any_of(c.genus().begin(), c.genus().end(), [](int gi) { return gi != 0; })) return false;
  return c.shape() == r.diagram && x == field.t_power(r.loops);
}

// ---- text form: "g=0: 1 1' | g=1: 2" ----

inline std::string to_string(const Cobordism& c) {
  if (c.shape().total_points() == 0) return "<empty>";
  std::string out;
  const auto& blocks = c.shape().blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) out += " | ";
    out += "g=" + std::to_string(c.genus()[b]) + ":";
    for (int p : blocks[b]) out += " " + (p < c.m() ? std::to_string(p + 1) : std::to_string(p - c.m() + 1) + "'");
  }
  return out;
}

inline Cobordism parse_cobordism(std::string_view text, int expect_m = -1, int expect_n = -1) {
  std::string circles;
  std::vector<int> genus_by_component;
  std::size_t start = 0;
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
  if (trimmed.empty() || trimmed == "<empty>") {
    if (expect_m > 0 || expect_n > 0) throw ParseError("missing point 1", 0);
    return Cobordism();
  }
  for (;;) {
    std::size_t bar = text.find('|', start);
    std::string_view part = text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
    std::size_t colon = part.find(':');
    std::size_t eq = part.find("g=");
    if (colon == std::string_view::npos || eq == std::string_view::npos || eq > colon) {
      throw ParseError("component must look like 'g=<genus>: <circles>'", start);
    }
    std::string_view num = part.substr(eq + 2, colon - eq - 2);
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; })) {
      throw ParseError("malformed genus", start + eq + 2);
    }
    genus_by_component.push_back(std::stoi(std::string(num)));
    if (!circles.empty()) circles += " | ";
    std::string_view body = part.substr(colon + 1);
    if (body.find_first_not_of(" \t") == std::string_view::npos) throw ParseError("component without circles", start + colon);
    circles += std::string(body);
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  // Parse the circle partition with the diagram grammar, then reattach genera
  // by each component's smallest circle.
  PartitionDiagram shape = parse_diagram(circles, expect_m, expect_n);
  std::vector<std::pair<PartitionDiagram::Block, int>> comps;
  std::vector<std::string> pieces;
  {
    std::size_t s = 0;
    for (;;) {
      std::size_t bar = circles.find('|', s);
      pieces.push_back(circles.substr(s, bar == std::string::npos ? std::string::npos : bar - s));
      if (bar == std::string::npos) break;
      s = bar + 1;
    }
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    PartitionDiagram::Block blk;
    std::size_t pos = 0;
    const std::string& piece = pieces[i];
    while (pos < piece.size()) {
      if (!std::isdigit(static_cast<unsigned char>(piece[pos]))) {
        ++pos;
        continue;
      }
      std::size_t e = pos;
      while (e < piece.size() && std::isdigit(static_cast<unsigned char>(piece[e]))) ++e;
      int label = std::stoi(piece.substr(pos, e - pos));
      bool lower = e < piece.size() && piece[e] == '\'';
      blk.push_back(lower ? shape.m() + label - 1 : label - 1);
      pos = e + (lower ? 1 : 0);
    }
    comps.emplace_back(std::move(blk), genus_by_component[i]);
  }
  return Cobordism::from_components(shape.m(), shape.n(), std::move(comps));
}

inline std::string to_string(const CobCombination& c) {
  if (c.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [cob, x] : c) {
    const bool neg = x.looks_negative();
    if (first) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    first = false;
    out += coefficient_atom(neg ? -x : x) + " * " + to_string(cob);
  }
  return out;
}

}  // namespace diagcat
