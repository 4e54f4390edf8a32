#pragma once

// Finitely presented functors over an additive subcategory S of the Karoubi
// envelope. An object is a presentation Q → P, standing for the cokernel of
// the induced map of represented functors; a morphism is a commuting square.
// Everything is computed on presentations; functor values never appear.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diagcat/error.hpp"
#include "diagcat/karoubi.hpp"
#include "diagcat/linalg.hpp"

namespace diagcat {

struct FpObject {
  KarMorphism rho;  // Q → P

  const KarObject& generators() const noexcept { return rho.cod; }
  const KarObject& relations() const noexcept { return rho.dom; }
  friend bool operator==(const FpObject&, const FpObject&) = default;
};

/// alpha ∘ src.rho = dst.rho ∘ omega
struct FpMorphism {
  FpObject src;
  FpObject dst;
  KarMorphism alpha;  // P → P'
  KarMorphism omega;  // Q → Q'
};

inline FpObject fp_object(KarMorphism rho) { return FpObject{std::move(rho)}; }

/// Yoneda image of P: the presentation 0 → P.
inline FpObject fp_representable(const KarObject& p) { return FpObject{kar_zero(kar_zero_object(p.cls), p)}; }

inline FpMorphism fp_morphism(const FpObject& src, const FpObject& dst, KarMorphism alpha, KarMorphism omega,
                              const FieldSpec& field) {
  if (!(alpha.dom == src.generators()) || !(alpha.cod == dst.generators())) throw Error("alpha has the wrong shape");
  if (!(omega.dom == src.relations()) || !(omega.cod == dst.relations())) throw Error("omega has the wrong shape");
  if (kar_compose(alpha, src.rho, field) != kar_compose(dst.rho, omega, field)) throw Error("square does not commute");
  return FpMorphism{src, dst, std::move(alpha), std::move(omega)};
}

/// Yoneda image of a: P → P'.
inline FpMorphism fp_represented(const KarMorphism& a) {
  FpObject src = fp_representable(a.dom), dst = fp_representable(a.cod);
  return FpMorphism{src, dst, a, kar_zero(src.relations(), dst.relations())};
}

inline FpMorphism fp_identity(const FpObject& m) {
  return FpMorphism{m, m, kar_identity(m.generators()), kar_identity(m.relations())};
}

inline FpMorphism fp_compose(const FpMorphism& g, const FpMorphism& f, const FieldSpec& field) {
  if (!(f.dst == g.src)) throw Error("shape mismatch in composition of presented morphisms");
  return FpMorphism{f.src, g.dst, kar_compose(g.alpha, f.alpha, field), kar_compose(g.omega, f.omega, field)};
}

namespace detail {

inline SparseVec shifted(SparseVec v, std::size_t offset) {
  for (auto& e : v) e.first += offset;
  return v;
}

// Coordinates of a square (alpha, omega) in the concatenated entry bases.
class SquareCoordinates {
public:
  SquareCoordinates(const FpObject& m, const FpObject& n)
      : alpha_(m.generators(), n.generators()), omega_(m.relations(), n.relations()) {}

  SparseVec operator()(const KarMorphism& alpha, const KarMorphism& omega) const {
    SparseVec v = alpha_(alpha.entries);
    SparseVec w = shifted(omega_(omega.entries), alpha_.dimension());
    v.insert(v.end(), w.begin(), w.end());
    return v;
  }

private:
  KarCoordinates alpha_;
  KarCoordinates omega_;
};

inline KarMorphism combine(const std::vector<KarMorphism>& basis, const SparseVec& comb, std::size_t offset,
                           const KarObject& dom, const KarObject& cod) {
  KarMorphism out = kar_zero(dom, cod);
  for (const auto& [k, c] : comb)
    if (k >= offset && k - offset < basis.size()) out = kar_add(out, kar_scale(basis[k - offset], c));
  return out;
}

// R' for Hom(M, N): squares whose alpha factors through N's rho.
inline EchelonBasis null_squares(const FpObject& m, const FpObject& n, const SquareCoordinates& coords,
                                 const FieldSpec& field) {
  EchelonBasis out(field);
  for (const auto& beta : kar_hom_basis(m.generators(), n.relations(), field))
    out.insert(coords(kar_compose(n.rho, beta, field), kar_compose(beta, m.rho, field)));
  const auto omegas = kar_hom_basis(m.relations(), n.relations(), field);
  KarCoordinates target(m.relations(), n.generators());
  EchelonBasis killed(field, /*track=*/true);
  for (const auto& w : omegas) killed.insert(target(kar_compose(n.rho, w, field).entries));
  for (const auto& rel : killed.relations()) {
    KarMorphism w = combine(omegas, rel, 0, m.relations(), n.relations());
    out.insert(coords(kar_zero(m.generators(), n.generators()), w));
  }
  return out;
}

}  // namespace detail

struct FpHom {
  std::vector<FpMorphism> basis;  // representatives of a basis of R / R'
  std::size_t dim_r = 0;
  std::size_t dim_r_prime = 0;

  std::size_t dimension() const noexcept { return basis.size(); }
};

/// Hom(coker ρ, coker ρ') as commuting squares modulo those whose alpha
/// factors through ρ'.
inline FpHom fp_hom(const FpObject& m, const FpObject& n, const FieldSpec& field) {
  if (m.rho.dom.cls != n.rho.dom.cls) throw Error("presentations live in different diagram classes");
  const auto alphas = kar_hom_basis(m.generators(), n.generators(), field);
  const auto omegas = kar_hom_basis(m.relations(), n.relations(), field);
  KarCoordinates constraint(m.relations(), n.generators());
  EchelonBasis square(field, /*track=*/true);
  for (const auto& a : alphas) square.insert(constraint(kar_compose(a, m.rho, field).entries));
  for (const auto& w : omegas) square.insert(constraint(kar_scale(kar_compose(n.rho, w, field), -field.one()).entries));

  detail::SquareCoordinates coords(m, n);
  EchelonBasis quotient = detail::null_squares(m, n, coords, field);
  FpHom out;
  out.dim_r = square.relations().size();
  out.dim_r_prime = quotient.rank();
  for (const auto& rel : square.relations()) {
    KarMorphism a = detail::combine(alphas, rel, 0, m.generators(), n.generators());
    KarMorphism w = detail::combine(omegas, rel, alphas.size(), m.relations(), n.relations());
    if (quotient.insert(coords(a, w))) out.basis.push_back(FpMorphism{m, n, std::move(a), std::move(w)});
  }
  return out;
}

/// True iff f is zero in mod-S, i.e. its alpha factors through dst.rho.
inline bool fp_is_zero(const FpMorphism& f, const FieldSpec& field) {
  detail::SquareCoordinates coords(f.src, f.dst);
  EchelonBasis null = detail::null_squares(f.src, f.dst, coords, field);
  return null.contains(coords(f.alpha, f.omega));
}

/// Rank of a family of morphisms M → N in Hom(M, N).
inline std::size_t fp_rank(const std::vector<FpMorphism>& family, const FieldSpec& field) {
  if (family.empty()) return 0;
  const FpObject& m = family.front().src;
  const FpObject& n = family.front().dst;
  detail::SquareCoordinates coords(m, n);
  EchelonBasis basis = detail::null_squares(m, n, coords, field);
  const std::size_t base = basis.rank();
  for (const auto& f : family) basis.insert(coords(f.alpha, f.omega));
  return basis.rank() - base;
}

/// The unit presentation coker(id − t⁻¹ ηε) on [1], presenting [0]. Requires t ≠ 0.
inline FpObject fp_unit_presentation(DiagramClass cls, const FieldSpec& field) {
  KarObject one = kar_word(1, cls, field);
  LinMorphism rho = identity_morphism(1, field) - LinMorphism(PartitionDiagram(1, 1, {{0}, {1}}), field.t_power(-1));
  return fp_object(kar_morphism(one, one, {{rho}}, field));
}

/// Tensors a presentation of the unit by A on the right.
inline FpObject fp_embed(const KarObject& a, const FpObject& unit) {
  return fp_object(kar_tensor(unit.rho, kar_identity(a)));
}

/// Image of a: A → B under fp_embed.
inline FpMorphism fp_embed(const KarMorphism& a, const FpObject& unit) {
  return FpMorphism{fp_embed(a.dom, unit), fp_embed(a.cod, unit), kar_tensor(kar_identity(unit.generators()), a),
                    kar_tensor(kar_identity(unit.relations()), a)};
}

/// coker(phi) presented by [ρ', α]: Q' ⊕ P → P'.
inline FpObject fp_cokernel(const FpMorphism& phi) {
  return fp_object(kar_row({phi.dst.rho, phi.alpha}));
}

/// The canonical projection N → coker(phi).
inline FpMorphism fp_cokernel_projection(const FpMorphism& phi) {
  FpObject c = fp_cokernel(phi);
  return FpMorphism{phi.dst, c, kar_identity(phi.dst.generators()),
                    kar_inclusion({phi.dst.relations(), phi.src.generators()}, 0)};
}

// ---- weak kernels and kernels ----

struct WeakKernel {
  KarObject k;
  KarMorphism kappa;  // K → A, the composite (ε ⊗ A) ∘ κ
};

/// ε: S → 1 must be a split epimorphism; S ⊗ α must split.
inline WeakKernel weak_kernel(const KarMorphism& alpha, const KarMorphism& eps, const FieldSpec& field) {
  if (eps.cod.words != std::vector<int>{0}) throw Error("eps must map to the unit");
  auto section = split_solve(eps, field);
  if (!section || section->fg != kar_identity(eps.cod)) throw Error("eps is not a split epimorphism");
  const KarObject& s = eps.dom;
  KarMorphism s_alpha = kar_tensor(kar_identity(s), alpha);
  auto w = split_solve(s_alpha, field);
  if (!w) throw Error("S ⊗ alpha is not split");
  KarMorphism inc = kernel_inclusion(s_alpha, *w);
  KarMorphism eps_a = kar_tensor(eps, kar_identity(alpha.dom));
  eps_a.cod = alpha.dom;  // 1 ⊗ A = A
  return WeakKernel{inc.dom, kar_compose(eps_a, inc, field)};
}

/// True iff every τ: T → A with α∘τ = 0 factors through the weak kernel.
inline bool weak_kernel_factors(const WeakKernel& wk, const KarMorphism& alpha, const KarObject& t,
                                const FieldSpec& field) {
  const auto taus = kar_hom_basis(t, alpha.dom, field);
  KarCoordinates into_b(t, alpha.cod);
  EchelonBasis killed(field, /*track=*/true);
  for (const auto& tau : taus) killed.insert(into_b(kar_compose(alpha, tau, field).entries));
  KarCoordinates into_a(t, alpha.dom);
  EchelonBasis through(field);
  for (const auto& nu : kar_hom_basis(t, wk.k, field)) through.insert(into_a(kar_compose(wk.kappa, nu, field).entries));
  for (const auto& rel : killed.relations()) {
    KarMorphism tau = detail::combine(taus, rel, 0, t, alpha.dom);
    if (!through.contains(into_a(tau.entries))) return false;
  }
  return true;
}

struct FpKernel {
  FpObject object;
  FpMorphism inclusion;  // ker → src
};

/// ker(phi) as the image of a weak kernel K1 of [α, ρ'] in M, presented by
/// the K1-part of a weak kernel of [κ_P, −ρ].
inline FpKernel fp_kernel(const FpMorphism& phi, const KarMorphism& eps, const FieldSpec& field) {
  const FpObject& m = phi.src;
  const FpObject& n = phi.dst;
  const std::vector<KarObject> top{m.generators(), n.relations()};
  WeakKernel k1 = weak_kernel(kar_row({phi.alpha, kar_scale(n.rho, -field.one())}), eps, field);
  KarMorphism kappa_p = kar_compose(kar_projection(top, 0), k1.kappa, field);

  const std::vector<KarObject> second{k1.k, m.relations()};
  WeakKernel k2 = weak_kernel(kar_row({kappa_p, kar_scale(m.rho, -field.one())}), eps, field);
  KarMorphism lambda_k = kar_compose(kar_projection(second, 0), k2.kappa, field);
  KarMorphism lambda_q = kar_compose(kar_projection(second, 1), k2.kappa, field);

  FpObject ker = fp_object(lambda_k);
  FpMorphism inc = fp_morphism(ker, m, kappa_p, lambda_q, field);
  return FpKernel{ker, inc};
}

// ---- text form: "coker( <dom> → <cod> : {matrix} )" ----

inline std::string to_string(const FpObject& m, const FieldSpec& field) {
  return "coker( " + to_string(m.rho, field) + " )";
}

inline FpObject parse_fp_object(std::string_view text, DiagramClass cls, const FieldSpec& field) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  static constexpr std::string_view kOpen = "coker(";
  if (s.substr(0, kOpen.size()) != kOpen || s.back() != ')') throw ParseError("expected coker( ... )", 0);
  s = trim(s.substr(kOpen.size(), s.size() - kOpen.size() - 1));
  static constexpr std::string_view kArrow = "→";
  const std::size_t arrow = s.find(kArrow);
  if (arrow == std::string_view::npos) throw ParseError("expected '→' between objects", kOpen.size());
  const std::size_t colon = s.find(':', arrow);
  if (colon == std::string_view::npos) throw ParseError("expected ':' before the matrix", kOpen.size() + arrow);
  KarObject dom = parse_kar_object(trim(s.substr(0, arrow)), cls, field);
  KarObject cod = parse_kar_object(trim(s.substr(arrow + kArrow.size(), colon - arrow - kArrow.size())), cls, field);
  return fp_object(parse_kar_matrix(trim(s.substr(colon + 1)), dom, cod, field));
}

}  // namespace diagcat
