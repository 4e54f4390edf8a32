#pragma once

// Formal linear combinations of partition diagrams and the hom-space layer.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "diagcat/error.hpp"
#include "diagcat/linalg.hpp"
#include "diagcat/partition.hpp"
#include "diagcat/scalar.hpp"

namespace diagcat {

/// A morphism [dom] → [cod] of S_t (or a diagram subcategory): a finite
/// combination of diagrams in P_{dom,cod}. Zero coefficients are never stored.
class LinMorphism {
public:
  using Terms = std::map<PartitionDiagram, FieldElement>;

  LinMorphism() = default;
  LinMorphism(int dom, int cod) : dom_(dom), cod_(cod) {}
  LinMorphism(const PartitionDiagram& d, const FieldElement& c) : dom_(d.m()), cod_(d.n()) { add_term(d, c); }

  int dom() const noexcept { return dom_; }
  int cod() const noexcept { return cod_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  void add_term(const PartitionDiagram& d, const FieldElement& c) {
    if (d.m() != dom_ || d.n() != cod_) throw Error("term shape does not match morphism shape");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(d, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Coefficient of d, or nullptr when absent.
  const FieldElement* coefficient(const PartitionDiagram& d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? nullptr : &it->second;
  }

  LinMorphism scaled(const FieldElement& c) const {
    LinMorphism r(dom_, cod_);
    if (c.is_zero()) return r;
    for (const auto& [d, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), d, x * c);
    return r;
  }

  LinMorphism& operator+=(const LinMorphism& o) {
    check_same_shape(o);
    for (const auto& [d, x] : o.terms_) add_term(d, x);
    return *this;
  }
  LinMorphism& operator-=(const LinMorphism& o) {
    check_same_shape(o);
    for (const auto& [d, x] : o.terms_) add_term(d, -x);
    return *this;
  }
  friend LinMorphism operator+(LinMorphism a, const LinMorphism& b) { return a += b; }
  friend LinMorphism operator-(LinMorphism a, const LinMorphism& b) { return a -= b; }
  LinMorphism operator-() const {
    LinMorphism r(dom_, cod_);
    for (const auto& [d, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), d, -x);
    return r;
  }

  friend bool operator==(const LinMorphism&, const LinMorphism&) = default;

private:
  void check_same_shape(const LinMorphism& o) const {
    if (o.dom_ != dom_ || o.cod_ != cod_) throw Error("shape mismatch in morphism sum");
  }

  int dom_ = 0;
  int cod_ = 0;
  Terms terms_;
};

inline LinMorphism identity_morphism(int word, const FieldSpec& field) {
  return LinMorphism(PartitionDiagram::identity(word), field.one());
}

inline LinMorphism diagram_morphism(const PartitionDiagram& d, const FieldSpec& field) {
  return LinMorphism(d, field.one());
}

namespace detail {

// t^k for small k, cached per call site to avoid recomputing powers.
class LoopPowers {
public:
  explicit LoopPowers(const FieldSpec& field) : field_(field) {}
  const FieldElement& get(int k) {
    while (static_cast<int>(powers_.size()) <= k)
      powers_.push_back(powers_.empty() ? field_.one() : powers_.back() * field_.t());
    return powers_[static_cast<std::size_t>(k)];
  }

private:
  const FieldSpec& field_;
  std::vector<FieldElement> powers_;
};

}  // namespace detail

/// a ∘ b, extended bilinearly; every closed loop contributes a factor t.
inline LinMorphism compose(const LinMorphism& a, const LinMorphism& b, const FieldSpec& field) {
  if (b.cod() != a.dom()) {
    throw Error("shape mismatch: cannot compose [" + std::to_string(a.dom()) + "]→[" + std::to_string(a.cod()) +
                "] after [" + std::to_string(b.dom()) + "]→[" + std::to_string(b.cod()) + "]");
  }
  LinMorphism out(b.dom(), a.cod());
  detail::LoopPowers powers(field);
  for (const auto& [da, ca] : a.terms())
    for (const auto& [db, cb] : b.terms()) {
      ComposeResult r = compose(da, db);
      out.add_term(r.diagram, ca * cb * powers.get(r.loops));
    }
  return out;
}

inline LinMorphism tensor(const LinMorphism& a, const LinMorphism& b) {
  LinMorphism out(a.dom() + b.dom(), a.cod() + b.cod());
  for (const auto& [da, ca] : a.terms())
    for (const auto& [db, cb] : b.terms()) out.add_term(tensor(da, db), ca * cb);
  return out;
}

enum class BilinearOp { Compose, Tensor };

inline LinMorphism lin_bilinear(BilinearOp op, const LinMorphism& a, const LinMorphism& b, const FieldSpec& field) {
  return op == BilinearOp::Compose ? compose(a, b, field) : tensor(a, b);
}

inline bool in_class(const LinMorphism& f, DiagramClass c) {
  for (const auto& [d, x] : f.terms())
    if (!class_member(d, c)) return false;
  return true;
}

/// All class members of P_{m,n}, canonically ordered, with an index lookup.
struct HomBasis {
  DiagramClass cls = DiagramClass::All;
  int m = 0;
  int n = 0;
  std::vector<PartitionDiagram> diagrams;
  std::unordered_map<PartitionDiagram, std::size_t> index;

  std::size_t size() const noexcept { return diagrams.size(); }
  std::optional<std::size_t> find(const PartitionDiagram& d) const {
    auto it = index.find(d);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

/// Cached; the returned reference stays valid for the program lifetime.
inline const HomBasis& hom_basis(DiagramClass cls, int m, int n) {
  static std::mutex mutex;
  static std::map<std::tuple<DiagramClass, int, int>, std::unique_ptr<HomBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{cls, m, n}];
  if (!slot) {
    auto basis = std::make_unique<HomBasis>();
    basis->cls = cls;
    basis->m = m;
    basis->n = n;
    for (auto& d : enumerate_diagrams(m, n))
      if (class_member(d, cls)) basis->diagrams.push_back(std::move(d));
    for (std::size_t i = 0; i < basis->diagrams.size(); ++i) basis->index.emplace(basis->diagrams[i], i);
    slot = std::move(basis);
  }
  return *slot;
}

/// Coordinates of f in `basis`, shifted by `offset`. Throws with the
/// offending diagram when f leaves the span of the basis.
inline SparseVec coordinates(const LinMorphism& f, const HomBasis& basis, std::size_t offset = 0) {
  if (f.dom() != basis.m || f.cod() != basis.n) throw Error("coordinates: shape mismatch");
  std::vector<SparseEntry> entries;
  entries.reserve(f.size());
  for (const auto& [d, c] : f.terms()) {
    auto idx = basis.find(d);
    if (!idx) throw Error("image escapes codomain span: " + to_string(d));
    entries.emplace_back(offset + *idx, c);
  }
  return sparse_from_entries(std::move(entries));
}

inline LinMorphism from_coordinates(const SparseVec& v, const HomBasis& basis, std::size_t offset = 0) {
  LinMorphism f(basis.m, basis.n);
  for (const auto& [i, c] : v) {
    if (i < offset || i - offset >= basis.size()) continue;
    f.add_term(basis.diagrams[i - offset], c);
  }
  return f;
}

using LinearMap = std::function<LinMorphism(const LinMorphism&)>;

inline LinearMap pre_compose_with(LinMorphism a, FieldSpec field) {
  return [a = std::move(a), field = std::move(field)](const LinMorphism& x) { return compose(a, x, field); };
}
inline LinearMap post_compose_with(LinMorphism b, FieldSpec field) {
  return [b = std::move(b), field = std::move(field)](const LinMorphism& x) { return compose(x, b, field); };
}

/// Column j holds the coordinates of map(domain[j]) in `codomain`.
inline ExactMatrix matrix_of(const LinearMap& map, std::span<const LinMorphism> domain, const HomBasis& codomain,
                             const FieldSpec& field) {
  std::vector<SparseVec> cols;
  cols.reserve(domain.size());
  for (const auto& x : domain) cols.push_back(coordinates(map(x), codomain));
  return ExactMatrix::from_columns(cols, codomain.size(), field);
}

inline std::vector<LinMorphism> basis_morphisms(const HomBasis& basis, const FieldSpec& field) {
  std::vector<LinMorphism> out;
  out.reserve(basis.size());
  for (const auto& d : basis.diagrams) out.push_back(diagram_morphism(d, field));
  return out;
}

// ---- text form: "c1 * <diagram> + c2 * <diagram>" ----

/// Coefficient text that parses back as a single factor: parenthesized only
/// when it has a top-level sum.
inline std::string coefficient_atom(const FieldElement& c) {
  std::string s = c.to_string();
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (depth == 0 && i > 0 && (s[i] == '+' || s[i] == '-')) return "(" + s + ")";
  }
  return s;
}

inline std::string to_string(const LinMorphism& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [d, c] : f.terms()) {
    const bool neg = c.looks_negative();
    const FieldElement a = neg ? -c : c;
    if (first) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    first = false;
    out += coefficient_atom(a) + " * " + to_string(d);
  }
  return out;
}

/// Parses the text form. Terms are split at top-level '+'/'-'; within a term
/// the last top-level '*' separates the coefficient from the diagram, and a
/// bare diagram means coefficient 1. "0" is the zero morphism of the given shape.
inline LinMorphism parse_lin_morphism(std::string_view text, const FieldSpec& field, int dom = -1, int cod = -1) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  auto trim = [&](std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
  };
  if (trim(text) == "0") {
    if (dom < 0 || cod < 0) throw ParseError("zero morphism needs an explicit shape", 0);
    return LinMorphism(dom, cod);
  }

  struct Term {
    bool negative;
    std::string_view body;
    std::size_t pos;
  };
  std::vector<Term> terms;
  int depth = 0;
  std::size_t start = 0;
  bool negative = false;
  {
    std::string_view lead = trim(text);
    if (!lead.empty() && (lead.front() == '-' || lead.front() == '+')) {
      negative = lead.front() == '-';
      start = static_cast<std::size_t>(lead.data() - text.data()) + 1;
    }
  }
  bool expecting_operand = true;  // a sign here is a unary sign, not a separator
  for (std::size_t k = start; k <= text.size(); ++k) {
    const char ch = k < text.size() ? text[k] : '\0';
    if (k == text.size() || (depth == 0 && (ch == '+' || ch == '-') && !expecting_operand)) {
      std::string_view body = trim(text.substr(start, k - start));
      if (body.empty()) throw ParseError("empty term", k);
      terms.push_back({negative, body, start});
      if (k == text.size()) break;
      negative = ch == '-';
      start = k + 1;
      expecting_operand = true;
      continue;
    }
    if (is_space(ch)) continue;
    if (ch == '(') ++depth;
    else if (ch == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced ')'", k);
    expecting_operand = ch == '*' || ch == '(' || ch == '/' || ch == '^';
  }
  if (depth != 0) throw ParseError("unbalanced '('", text.size());

  LinMorphism out;
  bool shaped = false;
  for (const auto& t : terms) {
    std::size_t star = std::string_view::npos;
    int d = 0;
    for (std::size_t k = 0; k < t.body.size(); ++k) {
      if (t.body[k] == '(') ++d;
      else if (t.body[k] == ')') --d;
      else if (d == 0 && t.body[k] == '*') star = k;
    }
    FieldElement coef = field.one();
    std::string_view diagram_text = t.body;
    if (star != std::string_view::npos) {
      coef = parse_field_element(t.body.substr(0, star), field);
      diagram_text = t.body.substr(star + 1);
    }
    if (t.negative) coef = -coef;
    PartitionDiagram diagram = parse_diagram(diagram_text, dom, cod);
    if (!shaped) {
      out = LinMorphism(diagram.m(), diagram.n());
      dom = diagram.m();
      cod = diagram.n();
      shaped = true;
    }
    out.add_term(diagram, coef);
  }
  return out;
}

}  // namespace diagcat
