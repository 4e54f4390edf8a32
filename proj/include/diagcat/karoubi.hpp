#pragma once

// Additive and idempotent completion: objects are formal direct sums of words
// cut by an idempotent matrix, morphisms are matrices of LinMorphisms that
// absorb the idempotents on both sides.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diagcat/error.hpp"
#include "diagcat/homspace.hpp"
#include "diagcat/linalg.hpp"
#include "diagcat/moebius.hpp"

namespace diagcat {

/// Entry (i, j) maps column word j to row word i.
using LinMatrix = std::vector<std::vector<LinMorphism>>;

inline LinMatrix zero_matrix(const std::vector<int>& dom_words, const std::vector<int>& cod_words) {
  LinMatrix out(cod_words.size());
  for (std::size_t i = 0; i < cod_words.size(); ++i)
    for (int w : dom_words) out[i].emplace_back(w, cod_words[i]);
  return out;
}

/// a (p×q) times b (q×r); `dom_words` has length r, `cod_words` length p.
inline LinMatrix matmul(const LinMatrix& a, const LinMatrix& b, const std::vector<int>& dom_words,
                        const std::vector<int>& cod_words, const FieldSpec& field) {
  LinMatrix out = zero_matrix(dom_words, cod_words);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < dom_words.size(); ++j)
      for (std::size_t l = 0; l < b.size(); ++l) {
        if (a[i][l].is_zero() || b[l][j].is_zero()) continue;
        out[i][j] += compose(a[i][l], b[l][j], field);
      }
  return out;
}

/// A direct sum of words with an idempotent matrix. Summands produced by
/// kar_object have a diagonal idempotent; kernels of split morphisms may not.
struct KarObject {
  DiagramClass cls = DiagramClass::All;
  std::vector<int> words;
  LinMatrix idem;

  std::size_t size() const noexcept { return words.size(); }
  bool is_diagonal() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (i != j && !idem[i][j].is_zero()) return false;
    return true;
  }
  friend bool operator==(const KarObject&, const KarObject&) = default;
};

struct KarMorphism {
  KarObject dom;
  KarObject cod;
  LinMatrix entries;

  friend bool operator==(const KarMorphism&, const KarMorphism&) = default;
  bool is_zero() const {
    for (const auto& row : entries)
      for (const auto& e : row)
        if (!e.is_zero()) return false;
    return true;
  }
};

inline void check_in_class(const LinMorphism& e, DiagramClass cls) {
  for (const auto& [d, c] : e.terms())
    if (!class_member(d, cls)) throw Error("diagram " + to_string(d) + " is not in class " + std::string(to_string(cls)));
}

/// Single-summand object ([word], e); e must be idempotent.
inline KarObject kar_object(int word, const LinMorphism& e, DiagramClass cls, const FieldSpec& field) {
  if (e.dom() != word || e.cod() != word) throw Error("idempotent must be an endomorphism of [" + std::to_string(word) + "]");
  check_in_class(e, cls);
  LinMorphism residual = compose(e, e, field) - e;
  if (!residual.is_zero()) throw Error("not idempotent: e∘e - e = " + to_string(residual));
  return KarObject{cls, {word}, {{e}}};
}

inline KarObject kar_word(int word, DiagramClass cls, const FieldSpec& field) {
  return kar_object(word, identity_morphism(word, field), cls, field);
}

inline KarObject kar_zero_object(DiagramClass cls) { return KarObject{cls, {}, {}}; }

inline KarObject kar_direct_sum(const std::vector<KarObject>& parts) {
  if (parts.empty()) throw Error("direct sum of no objects needs a class; use kar_zero_object");
  KarObject out{parts.front().cls, {}, {}};
  for (const auto& p : parts) {
    if (p.cls != out.cls) throw Error("direct sum across diagram classes");
    out.words.insert(out.words.end(), p.words.begin(), p.words.end());
  }
  out.idem = zero_matrix(out.words, out.words);
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j) out.idem[off + i][off + j] = p.idem[i][j];
    off += p.size();
  }
  return out;
}

inline KarMorphism kar_identity(const KarObject& x) { return KarMorphism{x, x, x.idem}; }

inline KarMorphism kar_zero(const KarObject& dom, const KarObject& cod) {
  return KarMorphism{dom, cod, zero_matrix(dom.words, cod.words)};
}

/// E_cod ∘ F ∘ E_dom
inline LinMatrix absorb(const KarObject& dom, const KarObject& cod, const LinMatrix& f, const FieldSpec& field) {
  return matmul(matmul(cod.idem, f, dom.words, cod.words, field), dom.idem, dom.words, cod.words, field);
}

/// Validates shapes, class membership and idempotent absorption.
inline KarMorphism kar_morphism(const KarObject& dom, const KarObject& cod, LinMatrix entries, const FieldSpec& field) {
  if (dom.cls != cod.cls) throw Error("morphism across diagram classes");
  if (entries.size() != cod.size()) throw Error("morphism matrix has wrong number of rows");
  for (std::size_t i = 0; i < cod.size(); ++i) {
    if (entries[i].size() != dom.size()) throw Error("morphism matrix has wrong number of columns");
    for (std::size_t j = 0; j < dom.size(); ++j) {
      const auto& e = entries[i][j];
      if (e.dom() != dom.words[j] || e.cod() != cod.words[i]) throw Error("matrix entry has the wrong shape");
      check_in_class(e, dom.cls);
    }
  }
  if (absorb(dom, cod, entries, field) != entries) throw Error("matrix does not absorb the idempotents");
  return KarMorphism{dom, cod, std::move(entries)};
}

inline KarMorphism kar_compose(const KarMorphism& g, const KarMorphism& f, const FieldSpec& field) {
  if (!(f.cod == g.dom)) throw Error("shape mismatch: codomain of the first morphism is not the domain of the second");
  return KarMorphism{f.dom, g.cod, matmul(g.entries, f.entries, f.dom.words, g.cod.words, field)};
}

inline KarMorphism kar_add(const KarMorphism& a, const KarMorphism& b) {
  if (!(a.dom == b.dom) || !(a.cod == b.cod)) throw Error("shape mismatch in morphism sum");
  KarMorphism out = a;
  for (std::size_t i = 0; i < out.entries.size(); ++i)
    for (std::size_t j = 0; j < out.entries[i].size(); ++j) out.entries[i][j] += b.entries[i][j];
  return out;
}

inline KarMorphism kar_scale(const KarMorphism& a, const FieldElement& c) {
  KarMorphism out = a;
  for (auto& row : out.entries)
    for (auto& e : row) e = e.scaled(c);
  return out;
}

inline KarMorphism kar_sub(const KarMorphism& a, const KarMorphism& b, const FieldSpec& field) {
  return kar_add(a, kar_scale(b, -field.one()));
}

namespace detail {

inline LinMatrix kronecker(const LinMatrix& a, const LinMatrix& b) {
  LinMatrix out;
  for (const auto& ra : a)
    for (const auto& rb : b) {
      std::vector<LinMorphism> row;
      for (const auto& x : ra)
        for (const auto& y : rb) row.push_back(tensor(x, y));
      out.push_back(std::move(row));
    }
  return out;
}

}  // namespace detail

inline KarObject kar_tensor(const KarObject& x, const KarObject& y) {
  if (x.cls != y.cls) throw Error("tensor across diagram classes");
  KarObject out{x.cls, {}, detail::kronecker(x.idem, y.idem)};
  for (int a : x.words)
    for (int b : y.words) out.words.push_back(a + b);
  return out;
}

inline KarMorphism kar_tensor(const KarMorphism& f, const KarMorphism& g) {
  return KarMorphism{kar_tensor(f.dom, g.dom), kar_tensor(f.cod, g.cod), detail::kronecker(f.entries, g.entries)};
}

/// Direct sum of morphisms placed side by side: [f_1 f_2 ...]: ⊕ dom_k → cod.
inline KarMorphism kar_row(const std::vector<KarMorphism>& parts) {
  if (parts.empty()) throw Error("empty row of morphisms");
  std::vector<KarObject> doms;
  for (const auto& p : parts) {
    if (!(p.cod == parts.front().cod)) throw Error("row entries must share a codomain");
    doms.push_back(p.dom);
  }
  KarMorphism out{kar_direct_sum(doms), parts.front().cod, {}};
  out.entries.resize(out.cod.size());
  for (const auto& p : parts)
    for (std::size_t i = 0; i < out.cod.size(); ++i)
      out.entries[i].insert(out.entries[i].end(), p.entries[i].begin(), p.entries[i].end());
  return out;
}

/// Stacked morphisms [f_1; f_2; ...]: dom → ⊕ cod_k.
inline KarMorphism kar_column(const std::vector<KarMorphism>& parts) {
  if (parts.empty()) throw Error("empty column of morphisms");
  std::vector<KarObject> cods;
  for (const auto& p : parts) {
    if (!(p.dom == parts.front().dom)) throw Error("column entries must share a domain");
    cods.push_back(p.cod);
  }
  KarMorphism out{parts.front().dom, kar_direct_sum(cods), {}};
  for (const auto& p : parts) out.entries.insert(out.entries.end(), p.entries.begin(), p.entries.end());
  return out;
}

/// Projection ⊕ parts → parts[k] and inclusion parts[k] → ⊕ parts.
inline KarMorphism kar_projection(const std::vector<KarObject>& parts, std::size_t k) {
  KarObject sum = kar_direct_sum(parts);
  KarMorphism out = kar_zero(sum, parts[k]);
  std::size_t off = 0;
  for (std::size_t p = 0; p < k; ++p) off += parts[p].size();
  for (std::size_t i = 0; i < parts[k].size(); ++i)
    for (std::size_t j = 0; j < parts[k].size(); ++j) out.entries[i][off + j] = parts[k].idem[i][j];
  return out;
}

inline KarMorphism kar_inclusion(const std::vector<KarObject>& parts, std::size_t k) {
  KarObject sum = kar_direct_sum(parts);
  KarMorphism out = kar_zero(parts[k], sum);
  std::size_t off = 0;
  for (std::size_t p = 0; p < k; ++p) off += parts[p].size();
  for (std::size_t i = 0; i < parts[k].size(); ++i)
    for (std::size_t j = 0; j < parts[k].size(); ++j) out.entries[off + i][j] = parts[k].idem[i][j];
  return out;
}

// ---- hom spaces ----

/// Coordinates of a morphism matrix in the concatenated diagram bases of its entries.
class KarCoordinates {
public:
  KarCoordinates(const KarObject& dom, const KarObject& cod) {
    for (std::size_t i = 0; i < cod.size(); ++i)
      for (std::size_t j = 0; j < dom.size(); ++j) {
        const HomBasis& b = hom_basis(dom.cls, dom.words[j], cod.words[i]);
        bases_.push_back(&b);
        offsets_.push_back(total_);
        total_ += b.size();
      }
    cols_ = dom.size();
  }

  std::size_t dimension() const noexcept { return total_; }

  SparseVec operator()(const LinMatrix& m) const {
    SparseVec out;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m[i].size(); ++j) {
        const std::size_t k = i * cols_ + j;
        SparseVec part = coordinates(m[i][j], *bases_[k], offsets_[k]);
        out.insert(out.end(), part.begin(), part.end());
      }
    return out;
  }

private:
  std::vector<const HomBasis*> bases_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
  std::size_t cols_ = 0;
};

/// A basis of Hom(X, Y): images E_Y ∘ D ∘ E_X of single-diagram matrices,
/// filtered to an independent subset.
inline std::vector<KarMorphism> kar_hom_basis(const KarObject& x, const KarObject& y, const FieldSpec& field) {
  if (x.cls != y.cls) throw Error("hom across diagram classes");
  KarCoordinates coords(x, y);
  EchelonBasis echelon(field);
  std::vector<KarMorphism> out;
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      for (const auto& d : hom_basis(x.cls, x.words[j], y.words[i]).diagrams) {
        LinMatrix single = zero_matrix(x.words, y.words);
        single[i][j] = diagram_morphism(d, field);
        LinMatrix c = absorb(x, y, single, field);
        if (echelon.insert(coords(c))) out.push_back(KarMorphism{x, y, std::move(c)});
      }
  return out;
}

inline std::size_t kar_hom_dimension(const KarObject& x, const KarObject& y, const FieldSpec& field) {
  return kar_hom_basis(x, y, field).size();
}

// ---- splitting ----

struct SplitWitness {
  KarMorphism g;            // f g f = f
  KarMorphism gf;           // idempotent on dom f
  KarMorphism fg;           // idempotent on cod f
  KarMorphism kernel_idem;  // id - g f
  std::vector<std::string> denominators;  // non-constant denominators appearing in g
};

inline std::vector<std::string> denominators_of(const KarMorphism& g) {
  std::set<std::string> dens;
  for (const auto& row : g.entries)
    for (const auto& e : row)
      for (const auto& [d, c] : e.terms())
        if (c.is_function() && !c.denominator().is_constant()) dens.insert(c.denominator().to_string());
  return {dens.begin(), dens.end()};
}

/// Solves f g f = f for g in the compressed Hom(cod f, dom f). The returned
/// witness is re-verified exactly.
inline std::optional<SplitWitness> split_solve(const KarMorphism& f, const FieldSpec& field) {
  const auto gs = kar_hom_basis(f.cod, f.dom, field);
  KarCoordinates coords(f.dom, f.cod);
  EchelonBasis echelon(field, /*track=*/true);
  for (const auto& g : gs) echelon.insert(coords(kar_compose(f, kar_compose(g, f, field), field).entries));
  auto comb = echelon.express(coords(f.entries));
  if (!comb) return std::nullopt;
  KarMorphism g = kar_zero(f.cod, f.dom);
  for (const auto& [k, c] : *comb) g = kar_add(g, kar_scale(gs[k], c));
  if (kar_compose(f, kar_compose(g, f, field), field) != f) throw Error("split witness failed re-verification");
  KarMorphism gf = kar_compose(g, f, field);
  KarMorphism fg = kar_compose(f, g, field);
  KarMorphism kernel = kar_sub(kar_identity(f.dom), gf, field);
  auto dens = denominators_of(g);
  return SplitWitness{std::move(g), std::move(gf), std::move(fg), std::move(kernel), std::move(dens)};
}

/// The summand of dom f cut by id - g f, and its inclusion into dom f.
inline KarObject kernel_object(const KarMorphism& f, const SplitWitness& w) {
  return KarObject{f.dom.cls, f.dom.words, w.kernel_idem.entries};
}

inline KarMorphism kernel_inclusion(const KarMorphism& f, const SplitWitness& w) {
  return KarMorphism{kernel_object(f, w), f.dom, w.kernel_idem.entries};
}

// ---- named idempotents and text form ----

/// Resolves "id", "x_j", "e_j", "x_j*e_j" and "e_1'" on [word].
inline LinMorphism named_idempotent(std::string_view name, int word, const FieldSpec& field) {
  auto index_after = [&](std::string_view prefix) -> std::optional<int> {
    if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
    std::string_view rest = name.substr(prefix.size());
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }))
      return std::nullopt;
    return std::stoi(std::string(rest));
  };
  auto require_word = [&](int j) {
    if (j != word) throw Error("idempotent " + std::string(name) + " lives on [" + std::to_string(j) + "], not [" + std::to_string(word) + "]");
  };
  if (name == "id") return identity_morphism(word, field);
  if (name == "e_1'") {
    require_word(1);
    return e1_sprime(field);
  }
  if (auto star = name.find('*'); star != std::string_view::npos) {
    std::string_view lhs = name.substr(0, star), rhs = name.substr(star + 1);
    std::string_view digits = lhs.substr(std::min<std::size_t>(2, lhs.size()));
    const bool numeric = !digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c)) != 0;
    });
    if (numeric && lhs.substr(0, 2) == "x_" && rhs.substr(0, 2) == "e_" && rhs.substr(2) == digits) {
      const int j = std::stoi(std::string(digits));
      require_word(j);
      return moebius_xe(j, field);
    }
  } else if (auto j = index_after("x_")) {
    require_word(*j);
    return moebius_xj(*j, field);
  } else if (auto j2 = index_after("e_")) {
    require_word(*j2);
    return symmetrizer(*j2, field);
  }
  throw Error("unknown idempotent name '" + std::string(name) + "'");
}

inline std::string idempotent_name(const LinMorphism& e, const FieldSpec& field) {
  const int w = e.dom();
  if (e == identity_morphism(w, field)) return "id";
  if (w == 1 && field.t_nonzero() && e == e1_sprime(field)) return "e_1'";
  if (w <= 4) {
    if (e == moebius_xj(w, field)) return "x_" + std::to_string(w);
    if (e == symmetrizer(w, field)) return "e_" + std::to_string(w);
    if (e == moebius_xe(w, field)) return "x_" + std::to_string(w) + "*e_" + std::to_string(w);
  }
  return "(" + to_string(e) + ")";
}

/// "[w]@name⊕[w]@name" for diagonal objects; non-diagonal idempotents print
/// as "[w1,w2]@{row; row}" with comma-separated entries.
inline std::string to_string(const KarObject& x, const FieldSpec& field) {
  if (x.size() == 0) return "0";
  if (x.is_diagonal()) {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i) out += "⊕";
      out += "[" + std::to_string(x.words[i]) + "]@" + idempotent_name(x.idem[i][i], field);
    }
    return out;
  }
  std::string out = "[";
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + std::to_string(x.words[i]);
  out += "]@{";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < x.size(); ++j) out += (j ? ", " : "") + to_string(x.idem[i][j]);
  }
  return out + "}";
}

/// Parses the diagonal form "[w]@name⊕...", where name is a named idempotent
/// or a parenthesized LinMorphism. "0" is the zero object.
inline KarObject parse_kar_object(std::string_view text, DiagramClass cls, const FieldSpec& field) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s == "0") return kar_zero_object(cls);
  static constexpr std::string_view kPlus = "⊕";
  std::vector<KarObject> parts;
  std::size_t pos = 0;
  for (;;) {
    // split at top-level ⊕ (idempotent text may contain parentheses)
    int depth = 0;
    std::size_t end = pos;
    while (end < s.size()) {
      if (s[end] == '(') ++depth;
      else if (s[end] == ')') --depth;
      else if (depth == 0 && s.substr(end, kPlus.size()) == kPlus) break;
      ++end;
    }
    std::string_view part = s.substr(pos, end - pos);
    if (part.empty() || part.front() != '[') throw ParseError("summand must start with '['", pos);
    const std::size_t close = part.find(']');
    if (close == std::string_view::npos || close + 1 >= part.size() || part[close + 1] != '@') {
      throw ParseError("summand must look like [w]@idempotent", pos);
    }
    const int word = std::stoi(std::string(part.substr(1, close - 1)));
    std::string_view name = part.substr(close + 2);
    LinMorphism e = (!name.empty() && name.front() == '(' && name.back() == ')')
                        ? parse_lin_morphism(name.substr(1, name.size() - 2), field, word, word)
                        : named_idempotent(name, word, field);
    parts.push_back(kar_object(word, e, cls, field));
    if (end >= s.size()) break;
    pos = end + kPlus.size();
  }
  return kar_direct_sum(parts);
}

/// "<dom> → <cod> : {e11, e12; e21, e22}"
inline std::string to_string(const KarMorphism& f, const FieldSpec& field) {
  std::string out = to_string(f.dom, field) + " → " + to_string(f.cod, field) + " : {";
  for (std::size_t i = 0; i < f.entries.size(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < f.entries[i].size(); ++j) out += (j ? ", " : "") + to_string(f.entries[i][j]);
  }
  return out + "}";
}

/// Parses a matrix "{e11, e12; e21, e22}" between given objects.
inline KarMorphism parse_kar_matrix(std::string_view text, const KarObject& dom, const KarObject& cod,
                                    const FieldSpec& field) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw ParseError("matrix must be enclosed in braces", 0);
  s = s.substr(1, s.size() - 2);
  LinMatrix entries;
  std::size_t pos = 0;
  std::size_t row = 0;
  while (row < cod.size()) {
    std::size_t semi = s.find(';', pos);
    std::string_view line = s.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos);
    std::vector<LinMorphism> r;
    std::size_t p = 0;
    for (std::size_t col = 0; col < dom.size(); ++col) {
      std::size_t comma = line.find(',', p);
      std::string_view cell = line.substr(p, comma == std::string_view::npos ? std::string_view::npos : comma - p);
      r.push_back(parse_lin_morphism(cell, field, dom.words[col], cod.words[row]));
      if (comma == std::string_view::npos) {
        if (col + 1 != dom.size()) throw ParseError("too few entries in matrix row", pos);
        break;
      }
      p = comma + 1;
    }
    entries.push_back(std::move(r));
    ++row;
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  if (entries.size() != cod.size()) throw ParseError("wrong number of matrix rows", 0);
  return kar_morphism(dom, cod, std::move(entries), field);
}

}  // namespace diagcat
