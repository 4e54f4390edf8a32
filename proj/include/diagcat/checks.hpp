#pragma once

// Bounded verification of the structural conditions on diagram categories
// and of the representability statements for H_t and S'_t.
//
// Every check returns a CheckReport. Failures carry a witness that names the
// offending data in the text formats of the other modules.

#include <chrono>
#include <cstdint>
#include <random>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "diagcat/cobordism.hpp"
#include "diagcat/homspace.hpp"
#include "diagcat/karoubi.hpp"
#include "diagcat/linalg.hpp"
#include "diagcat/moebius.hpp"
#include "diagcat/partition.hpp"

namespace diagcat {

using Json = nlohmann::ordered_json;

enum class CheckStatus { Pass, Fail, PassUpToBound };

inline std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::PassUpToBound: return "pass-up-to-bound";
  }
  return "?";
}

struct CheckReport {
  std::string check;
  Json params = Json::object();
  CheckStatus status = CheckStatus::Pass;
  Json witness = nullptr;
  std::int64_t elapsed_ms = 0;

  bool passed() const noexcept { return status != CheckStatus::Fail; }

  Json to_json() const {
    Json j;
    j["check"] = check;
    j["params"] = params;
    j["status"] = std::string(to_string(status));
    j["witness"] = witness;
    j["elapsed_ms"] = elapsed_ms;
    return j;
  }
};

namespace detail {

class Stopwatch {
public:
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline CheckReport start_report(std::string name, Json params) {
  CheckReport r;
  r.check = std::move(name);
  r.params = std::move(params);
  return r;
}

inline CheckReport finish(CheckReport r, const Stopwatch& sw) {
  r.elapsed_ms = sw.elapsed_ms();
  return r;
}

inline CheckReport fail(CheckReport r, Json witness, const Stopwatch& sw) {
  r.status = CheckStatus::Fail;
  r.witness = std::move(witness);
  return finish(std::move(r), sw);
}

inline std::size_t bell(int n) {
  std::vector<std::vector<std::size_t>> tri{{1}};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::size_t> row{tri.back().back()};
    for (std::size_t k = 0; k < tri.back().size(); ++k) row.push_back(row.back() + tri.back()[k]);
    tri.push_back(std::move(row));
  }
  return tri[static_cast<std::size_t>(n)].front();
}

}  // namespace detail

// ---- (Diag) ----

/// (a) tensor is injective on basis pairs and stays in the class;
/// (b) a basis tensor factoring through 1 has both factors factoring through 1.
/// Bound: points of the tensor product, m1 + n1 + m2 + n2 ≤ max_points.
inline CheckReport check_diag(DiagramClass cls, int max_points) {
  detail::Stopwatch sw;
  auto report = detail::start_report("diag", Json{{"class", std::string(to_string(cls))}, {"max_points", max_points}});
  std::size_t pairs = 0;
  for (int m1 = 0; m1 <= max_points; ++m1)
    for (int n1 = 0; m1 + n1 <= max_points; ++n1)
      for (int m2 = 0; m1 + n1 + m2 <= max_points; ++m2)
        for (int n2 = 0; m1 + n1 + m2 + n2 <= max_points; ++n2) {
          const auto& a = hom_basis(cls, m1, n1);
          const auto& b = hom_basis(cls, m2, n2);
          std::map<PartitionDiagram, std::pair<std::size_t, std::size_t>> seen;
          for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) {
              ++pairs;
              const auto& f = a.diagrams[i];
              const auto& g = b.diagrams[j];
              PartitionDiagram fg = tensor(f, g);
              if (!class_member(fg, cls))
                return detail::fail(report, Json{{"part", "a"}, {"reason", "tensor leaves the class"}, {"f", to_string(f)},
                                                 {"g", to_string(g)}, {"shape", {m1, n1, m2, n2}}}, sw);
              auto [it, fresh] = seen.emplace(fg, std::make_pair(i, j));
              if (!fresh) {
                const auto& [i0, j0] = it->second;
                return detail::fail(report, Json{{"part", "a"}, {"reason", "tensor not injective"}, {"f", to_string(f)},
                                                 {"g", to_string(g)}, {"f_other", to_string(a.diagrams[i0])},
                                                 {"g_other", to_string(b.diagrams[j0])}, {"shape", {m1, n1, m2, n2}}}, sw);
              }
              if (factors_through_unit(fg) && !(factors_through_unit(f) && factors_through_unit(g)))
                return detail::fail(report, Json{{"part", "b"}, {"f", to_string(f)}, {"g", to_string(g)},
                                                 {"shape", {m1, n1, m2, n2}}}, sw);
            }
        }
  report.params["pairs_checked"] = pairs;
  report.status = CheckStatus::PassUpToBound;
  return detail::finish(std::move(report), sw);
}

// ---- (Ex1), (Ex2) ----

/// ψ_{U,V}: Hom(1,V) ⊗ Hom(U,1) → Hom(U,V) has full column rank for m + n ≤ max_points.
inline CheckReport check_ex1(DiagramClass cls, int max_points, const FieldSpec& field) {
  detail::Stopwatch sw;
  auto report = detail::start_report(
      "ex1", Json{{"class", std::string(to_string(cls))}, {"max_points", max_points}, {"t", field.to_string()}});
  for (int m = 0; m <= max_points; ++m)
    for (int n = 0; m + n <= max_points; ++n) {
      const auto& us = hom_basis(cls, m, 0);
      const auto& vs = hom_basis(cls, 0, n);
      const auto& target = hom_basis(cls, m, n);
      EchelonBasis echelon(field, /*track=*/true);
      std::vector<std::pair<std::size_t, std::size_t>> cols;
      for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = 0; b < us.size(); ++b) {
          auto vu = compose(diagram_morphism(vs.diagrams[a], field), diagram_morphism(us.diagrams[b], field), field);
          echelon.insert(coordinates(vu, target));
          cols.emplace_back(a, b);
        }
      if (!echelon.relations().empty()) {
        Json rel = Json::array();
        for (const auto& [k, c] : echelon.relations().front())
          rel.push_back(Json{{"coefficient", c.to_string()}, {"v", to_string(vs.diagrams[cols[k].first])},
                             {"u", to_string(us.diagrams[cols[k].second])}});
        return detail::fail(report, Json{{"U", m}, {"V", n}, {"relation", rel}}, sw);
      }
    }
  report.status = CheckStatus::PassUpToBound;
  return detail::finish(std::move(report), sw);
}

namespace detail {

enum class SampleKind { PureThroughUnit, ThroughUnitSum, General };

// Random non-zero morphism [m] → [n] in the class, or nullopt if the hom space is 0.
inline std::optional<LinMorphism> sample_morphism(DiagramClass cls, int m, int n, SampleKind kind, std::mt19937_64& rng,
                                                  const FieldSpec& field) {
  std::uniform_int_distribution<int> coef(-2, 2);
  auto pick_coef = [&] {
    int c = 0;
    while (c == 0) c = coef(rng);
    return field.constant(Rational(c));
  };
  auto pick = [&](const std::vector<PartitionDiagram>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  if (kind == SampleKind::PureThroughUnit) {
    const auto& us = hom_basis(cls, m, 0);
    const auto& vs = hom_basis(cls, 0, n);
    if (us.size() == 0 || vs.size() == 0) return std::nullopt;
    LinMorphism u(m, 0), v(0, n);
    for (int k = 0; k < 2; ++k) {
      u.add_term(pick(us.diagrams), pick_coef());
      v.add_term(pick(vs.diagrams), pick_coef());
    }
    if (u.is_zero() || v.is_zero()) return std::nullopt;
    return compose(v, u, field);
  }
  std::vector<PartitionDiagram> pool;
  for (const auto& d : hom_basis(cls, m, n).diagrams)
    if (kind == SampleKind::General || factors_through_unit(d)) pool.push_back(d);
  if (pool.empty()) return std::nullopt;
  LinMorphism f(m, n);
  const int terms = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int k = 0; k < terms; ++k) f.add_term(pick(pool), pick_coef());
  if (f.is_zero()) return std::nullopt;
  return f;
}

inline bool in_through_unit_span(const LinMorphism& f) {
  for (const auto& [d, c] : f.terms())
    if (!factors_through_unit(d)) return false;
  return true;
}

}  // namespace detail

/// Sampled (Ex2): for non-zero f, g with f ⊗ g in the span of through-unit
/// diagrams, f and g are each in their through-unit span. The structural
/// route through (Diag)(b) is run alongside and reported separately.
inline CheckReport check_ex2(DiagramClass cls, int max_points, int samples, std::uint64_t seed, const FieldSpec& field) {
  detail::Stopwatch sw;
  auto report = detail::start_report("ex2", Json{{"class", std::string(to_string(cls))},
                                                 {"max_points", max_points},
                                                 {"samples", samples},
                                                 {"seed", seed},
                                                 {"t", field.to_string()}});
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kind_dist(0, 2);
  int premise_hits = 0;
  int drawn = 0;
  int attempts = 0;
  while (drawn < samples) {
    if (++attempts > samples * 1000 + 1000) break;
    std::vector<int> sizes(4);
    std::uniform_int_distribution<int> point(0, max_points);
    for (auto& s : sizes) s = point(rng);
    if (sizes[0] + sizes[1] + sizes[2] + sizes[3] > max_points) continue;
    auto kf = static_cast<detail::SampleKind>(kind_dist(rng));
    auto kg = static_cast<detail::SampleKind>(kind_dist(rng));
    auto f = detail::sample_morphism(cls, sizes[0], sizes[1], kf, rng, field);
    auto g = detail::sample_morphism(cls, sizes[2], sizes[3], kg, rng, field);
    if (!f || !g) continue;
    ++drawn;
    if (!detail::in_through_unit_span(tensor(*f, *g))) continue;
    ++premise_hits;
    if (!detail::in_through_unit_span(*f) || !detail::in_through_unit_span(*g))
      return detail::fail(report, Json{{"f", to_string(*f)}, {"f_shape", {f->dom(), f->cod()}},
                                       {"g", to_string(*g)}, {"g_shape", {g->dom(), g->cod()}}}, sw);
  }
  CheckReport structural = check_diag(cls, max_points);
  report.witness = Json{{"sampled", Json{{"drawn", drawn}, {"premise_hits", premise_hits}}},
                        {"structural", structural.passed() ? "pass via (Diag)" : "inconclusive"}};
  report.status = CheckStatus::PassUpToBound;
  return detail::finish(std::move(report), sw);
}

// ---- U = Uex ----

/// For u: U → 1 and V = [k], k ≤ max_target_word: the kernel of
/// f ↦ f∘(u⊗U − U⊗u) on Hom(U,V) equals the image of v ↦ v∘u, which is injective.
inline CheckReport check_uex(const LinMorphism& u, DiagramClass cls, int max_target_word, const FieldSpec& field) {
  detail::Stopwatch sw;
  if (u.is_zero()) throw Error("u must be non-zero");
  if (u.cod() != 0) throw Error("u must be a morphism into [0]");
  check_in_class(u, cls);
  auto report = detail::start_report("uex", Json{{"class", std::string(to_string(cls))},
                                                 {"u", to_string(u)},
                                                 {"u_shape", {u.dom(), 0}},
                                                 {"max_target_word", max_target_word},
                                                 {"t", field.to_string()}});
  const int m = u.dom();
  const LinMorphism id_u = identity_morphism(m, field);
  const LinMorphism pair = tensor(u, id_u) - tensor(id_u, u);
  Json dims = Json::array();
  for (int k = 0; k <= max_target_word; ++k) {
    const auto& hom_uv = hom_basis(cls, m, k);
    const auto& hom_uuv = hom_basis(cls, 2 * m, k);
    const auto& hom_1v = hom_basis(cls, 0, k);

    EchelonBasis phi(field, /*track=*/true);
    for (const auto& d : hom_uv.diagrams) phi.insert(coordinates(compose(diagram_morphism(d, field), pair, field), hom_uuv));
    const std::size_t dim_kernel = hom_uv.size() - phi.rank();

    EchelonBasis image(field);
    bool image_in_kernel = true;
    for (const auto& d : hom_1v.diagrams) {
      LinMorphism vu = compose(diagram_morphism(d, field), u, field);
      image.insert(coordinates(vu, hom_uv));
      if (!compose(vu, pair, field).is_zero()) image_in_kernel = false;
    }
    const bool injective = image.rank() == hom_1v.size();
    dims.push_back(Json{{"V", k}, {"dim_kernel", dim_kernel}, {"dim_image", image.rank()}});
    if (!injective || !image_in_kernel || dim_kernel != image.rank()) {
      Json w{{"V", k}, {"dim_kernel", dim_kernel}, {"dim_image", image.rank()}, {"injective", injective},
             {"image_in_kernel", image_in_kernel}};
      for (const auto& rel : phi.relations()) {
        if (image.contains(rel)) continue;
        w["kernel_element_outside_image"] = to_string(from_coordinates(rel, hom_uv));
        break;
      }
      return detail::fail(report, std::move(w), sw);
    }
  }
  report.witness = Json{{"dimensions", dims}};
  report.status = CheckStatus::PassUpToBound;
  return detail::finish(std::move(report), sw);
}

// ---- splitting objects ----

enum class Side { Left, Right };

/// Forms X⊗f (left) or f⊗X (right) and searches for a splitting.
inline CheckReport check_splitting_object(const KarObject& x, const KarMorphism& f, Side side, const FieldSpec& field) {
  detail::Stopwatch sw;
  if (x.size() == 0) throw Error("splitting objects must be non-zero");
  auto report = detail::start_report("split", Json{{"class", std::string(to_string(x.cls))},
                                                   {"object", to_string(x, field)},
                                                   {"morphism", to_string(f, field)},
                                                   {"side", side == Side::Left ? "left" : "right"},
                                                   {"t", field.to_string()}});
  const KarMorphism id = kar_identity(x);
  const KarMorphism xf = side == Side::Left ? kar_tensor(id, f) : kar_tensor(f, id);
  auto w = split_solve(xf, field);
  if (!w) return detail::fail(report, Json{{"tensored", to_string(xf, field)}, {"reason", "no g with f g f = f"}}, sw);
  report.witness = Json{{"g", to_string(w->g, field)}, {"denominators", w->denominators}};
  report.status = CheckStatus::Pass;
  return detail::finish(std::move(report), sw);
}

// ---- representability ----

namespace detail {

// Odd blocks of f each receive one lower point, in block order.
inline PartitionDiagram attach_lower_points(const PartitionDiagram& f) {
  std::vector<PartitionDiagram::Block> blocks = f.blocks();
  int j = 0;
  for (const auto& b : blocks) j += static_cast<int>(b.size() % 2);
  int next = f.m();
  for (auto& b : blocks)
    if (b.size() % 2 == 1) b.push_back(next++);
  return PartitionDiagram(f.m(), j, std::move(blocks));
}

// φ = (p ∘ −) over a spanning set given as (domain coordinates, image) pairs.
struct PhiResult {
  std::size_t domain_dim = 0;
  std::size_t image_rank = 0;
  std::size_t target_dim = 0;
  std::optional<PartitionDiagram> missing;
};

inline PhiResult phi_rank(const std::vector<std::pair<SparseVec, LinMorphism>>& spanning, const HomBasis& target,
                          const FieldSpec& field) {
  EchelonBasis dom(field), img(field);
  for (const auto& [coords, image] : spanning) {
    dom.insert(coords);
    img.insert(coordinates(image, target));
  }
  PhiResult r{dom.rank(), img.rank(), target.size(), std::nullopt};
  if (r.image_rank < r.target_dim) {
    for (std::size_t k = 0; k < target.size(); ++k)
      if (!img.contains(SparseVec{{k, field.one()}})) {
        r.missing = target.diagrams[k];
        break;
      }
  }
  return r;
}

inline bool phi_bijective(const PhiResult& r) {
  return r.domain_dim == r.image_rank && r.image_rank == r.target_dim;
}

inline Json phi_witness(int m, const PhiResult& r) {
  Json w{{"m", m}, {"domain_dim", r.domain_dim}, {"image_rank", r.image_rank}, {"target_dim", r.target_dim}};
  if (r.missing) w["missing"] = to_string(*r.missing);
  return w;
}

}  // namespace detail

/// X = ⊕_{j≤i} ([j], x_j e_j) in H_t and p = (p_j x_j e_j)_j. For each
/// m ≤ m_max, φ = (p ∘ −): Hom_H([m], X) → Hom_S([m], [0]) must be bijective.
/// Every failing m is listed under "deficits". On pass, also checks that the orbit-representative spanning set maps to
/// x'(f) = f + (fewer blocks) for every f ∈ P_{m,0}.
inline CheckReport representable_H(int i, int m_max, const FieldSpec& field, bool skeleton = true) {
  detail::Stopwatch sw;
  auto report = detail::start_report("representable-h", Json{{"i", i}, {"m_max", m_max}, {"t", field.to_string()}});
  std::vector<LinMorphism> xe, pxe;
  for (int j = 0; j <= i; ++j) {
    xe.push_back(moebius_xe(j, field));
    pxe.push_back(compose(p_morphism(j, field), xe.back(), field));
  }
  Json deficits = Json::array();
  for (int m = 0; m <= m_max; ++m) {
    std::vector<std::pair<SparseVec, LinMorphism>> spanning;
    std::size_t offset = 0;
    for (int j = 0; j <= i; ++j) {
      const auto& hb = hom_basis(DiagramClass::EvenBlocks, m, j);
      for (const auto& h : hb.diagrams) {
        LinMorphism elem = compose(xe[static_cast<std::size_t>(j)], diagram_morphism(h, field), field);
        spanning.emplace_back(coordinates(elem, hb, offset), compose(pxe[static_cast<std::size_t>(j)], diagram_morphism(h, field), field));
      }
      offset += hb.size();
    }
    auto r = detail::phi_rank(spanning, hom_basis(DiagramClass::All, m, 0), field);
    if (!detail::phi_bijective(r)) deficits.push_back(detail::phi_witness(m, r));
  }
  if (!deficits.empty()) {
    Json w = deficits.front();
    w["deficits"] = deficits;
    return detail::fail(report, std::move(w), sw);
  }
  if (skeleton) {
    std::size_t checked = 0;
    bool triangular = true;
    for (int m = 0; m <= m_max && triangular; ++m)
      for (const auto& f : enumerate_diagrams(m, 0)) {
        PartitionDiagram g = detail::attach_lower_points(f);
        if (g.n() > i) continue;
        LinMorphism image = compose(pxe[static_cast<std::size_t>(g.n())], diagram_morphism(g, field), field);
        LinMorphism xp = moebius_x_prime(f, field);
        bool ok = image == xp && xp.coefficient(f) && xp.coefficient(f)->is_one();
        for (const auto& [d, c] : xp.terms())
          if (d != f && d.block_count() >= f.block_count()) ok = false;
        ++checked;
        if (!ok) {
          triangular = false;
          break;
        }
      }
    report.witness = Json{{"skeleton", Json{{"checked", checked}, {"triangular", triangular}}}};
  }
  report.status = m_max >= i ? CheckStatus::Pass : CheckStatus::PassUpToBound;
  return detail::finish(std::move(report), sw);
}

/// X = ([0], id) ⊕ ([1], e_1) in S'_t and p = (p_0, p_1); φ = (p ∘ −) must be
/// bijective onto Hom_S([m], [0]) for m ≤ m_max. Requires t ≠ 0.
inline CheckReport representable_Sprime(int m_max, const FieldSpec& field) {
  detail::Stopwatch sw;
  if (!field.t_nonzero()) throw Error("requires t ≠ 0");
  auto report = detail::start_report("representable-sprime", Json{{"m_max", m_max}, {"t", field.to_string()}});
  const LinMorphism e1 = e1_sprime(field);
  const LinMorphism p1e1 = compose(p_morphism(1, field), e1, field);
  for (int m = 0; m <= m_max; ++m) {
    std::vector<std::pair<SparseVec, LinMorphism>> spanning;
    const auto& h0 = hom_basis(DiagramClass::EvenManyOddBlocks, m, 0);
    const auto& h1 = hom_basis(DiagramClass::EvenManyOddBlocks, m, 1);
    for (const auto& h : h0.diagrams) {
      LinMorphism x = diagram_morphism(h, field);
      spanning.emplace_back(coordinates(x, h0), x);
    }
    for (const auto& h : h1.diagrams) {
      LinMorphism x = diagram_morphism(h, field);
      spanning.emplace_back(coordinates(compose(e1, x, field), h1, h0.size()), compose(p1e1, x, field));
    }
    auto r = detail::phi_rank(spanning, hom_basis(DiagramClass::All, m, 0), field);
    if (!detail::phi_bijective(r)) return detail::fail(report, detail::phi_witness(m, r), sw);
  }
  report.status = CheckStatus::PassUpToBound;
  return detail::finish(std::move(report), sw);
}

// ---- lemmas ----

enum class Lemma { Absorption, ComputationH };

namespace detail {

inline int max_lower_per_block(const PartitionDiagram& g) {
  int best = 0;
  for (const auto& b : g.blocks()) {
    int lower = 0;
    for (int p : b) lower += g.is_upper(p) ? 0 : 1;
    best = std::max(best, lower);
  }
  return best;
}

}  // namespace detail

/// absorption: x_j ∘ g = 0 when a block of g has two lower points.
/// computation_H: p_j x_j e_j g = x'(upper part of g) for even-block g with
/// at most one lower point per block.
inline CheckReport verify_lemma(Lemma which, int j_max, int m_max, const FieldSpec& field) {
  detail::Stopwatch sw;
  const std::string name = which == Lemma::Absorption ? "lemma-absorption" : "lemma-computation";
  auto report = detail::start_report(name, Json{{"j_max", j_max}, {"m_max", m_max}, {"t", field.to_string()}});
  std::size_t checked = 0;
  for (int j = 0; j <= j_max; ++j) {
    const LinMorphism op = which == Lemma::Absorption
                               ? moebius_xj(j, field)
                               : compose(p_morphism(j, field), moebius_xe(j, field), field);
    for (int m = 0; m <= m_max; ++m)
      for (const auto& g : enumerate_diagrams(m, j)) {
        LinMorphism expected;
        if (which == Lemma::Absorption) {
          if (detail::max_lower_per_block(g) < 2) continue;
          expected = LinMorphism(m, j);
        } else {
          if (!class_member(g, DiagramClass::EvenBlocks) || detail::max_lower_per_block(g) > 1) continue;
          expected = moebius_x_prime(upper_restriction(g), field);
        }
        LinMorphism lhs = compose(op, diagram_morphism(g, field), field);
        ++checked;
        if (lhs != expected)
          return detail::fail(report, Json{{"j", j}, {"g", to_string(g)}, {"g_shape", {m, j}}, {"lhs", to_string(lhs)},
                                           {"expected", to_string(expected)}}, sw);
      }
  }
  report.params["instances"] = checked;
  report.status = CheckStatus::PassUpToBound;
  return detail::finish(std::move(report), sw);
}

// ---- cobordism cross-check ----

/// Glue under the S_t datum matches diagram composition for all composable
/// pairs with m + k + n ≤ max_points, and ε∘φ^i∘η reduces to α(i) for
/// i ≤ trace_max under both the S_t and the Fibonacci datum.
inline CheckReport check_crosscheck_cob(int max_points, int trace_max, const FieldSpec& field) {
  detail::Stopwatch sw;
  auto report = detail::start_report(
      "crosscheck-cob", Json{{"max_points", max_points}, {"trace_max", trace_max}, {"t", field.to_string()}});
  std::size_t pairs = 0;
  for (int m = 0; m <= max_points; ++m)
    for (int k = 0; m + k <= max_points; ++k)
      for (int n = 0; m + k + n <= max_points; ++n)
        for (const auto& f : enumerate_diagrams(m, k))
          for (const auto& g : enumerate_diagrams(k, n)) {
            ++pairs;
            if (!partition_crosscheck(f, g, field))
              return detail::fail(report, Json{{"f", to_string(f)}, {"f_shape", {m, k}}, {"g", to_string(g)},
                                               {"g_shape", {k, n}}}, sw);
          }
  for (const auto& [label, datum] : {std::pair{"S_t", st_datum(field)}, std::pair{"fibonacci", fibonacci_datum(field)}})
    for (int i = 0; i <= trace_max; ++i) {
      FieldElement tr = frobenius_trace(i, datum);
      if (tr != datum.alpha(i))
        return detail::fail(report, Json{{"datum", label}, {"i", i}, {"trace", tr.to_string()},
                                         {"alpha", datum.alpha(i).to_string()}}, sw);
    }
  report.params["pairs_checked"] = pairs;
  report.status = CheckStatus::PassUpToBound;
  return detail::finish(std::move(report), sw);
}

}  // namespace diagcat
