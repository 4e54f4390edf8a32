// Prints one PASS/FAIL line per acceptance criterion. Arithmetic is exact, so
// every comparison has tolerance zero; the only pinned limits are runtimes.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "diagcat/cli.hpp"

using namespace diagcat;

namespace {

const FieldSpec kGeneric = FieldSpec::generic();

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first failure; later checks keep running but do not overwrite it.
struct Probe {
  Outcome out;
  void expect(bool cond, const std::string& what) {
    if (!cond && out.ok) {
      out.ok = false;
      out.detail = what;
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> body;
};

bool all_classes_closed(DiagramClass c, const PartitionDiagram& d) { return class_member(d, c); }

// 1
Outcome basis_counts() {
  Probe p;
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203};
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; m + n <= 6; ++n) {
      const auto total = static_cast<std::size_t>(m + n);
      p.expect(hom_basis(DiagramClass::All, m, n).size() == bell[total], "All " + std::to_string(m) + "," + std::to_string(n));
      const std::size_t want = total % 2 == 0 ? bell[total] : 0;
      p.expect(hom_basis(DiagramClass::EvenManyOddBlocks, m, n).size() == want,
               "EvenManyOddBlocks " + std::to_string(m) + "," + std::to_string(n));
    }
  return p.out;
}

// 2: associativity over m+k+l+n ≤ 6; interchange over the six boundary words ≤ 6.
Outcome category_laws() {
  Probe p;
  const DiagramClass classes[] = {DiagramClass::All, DiagramClass::EvenBlocks, DiagramClass::EvenManyOddBlocks,
                                  DiagramClass::BlocksSize2};
  for (DiagramClass c : classes) {
    const std::string tag(to_string(c));
    for (int m = 0; m <= 6; ++m)
      for (int k = 0; m + k <= 6; ++k)
        for (int l = 0; m + k + l <= 6; ++l)
          for (int n = 0; m + k + l + n <= 6; ++n)
            for (const auto& f : hom_basis(c, m, k).diagrams)
              for (const auto& g : hom_basis(c, k, l).diagrams)
                for (const auto& h : hom_basis(c, l, n).diagrams) {
                  auto gf = compose(g, f);
                  auto hg = compose(h, g);
                  auto left = compose(h, gf.diagram);
                  auto right = compose(hg.diagram, f);
                  p.expect(left.diagram == right.diagram && left.loops + gf.loops == right.loops + hg.loops,
                           tag + " associativity at " + to_string(f) + " ; " + to_string(g) + " ; " + to_string(h));
                  p.expect(all_classes_closed(c, gf.diagram), tag + " closure at " + to_string(g) + " ∘ " + to_string(f));
                }
    for (int a = 0; a <= 6; ++a)
      for (int b = 0; a + b <= 6; ++b)
        for (int d = 0; a + b + d <= 6; ++d)
          for (int x = 0; a + b + d + x <= 6; ++x)
            for (int y = 0; a + b + d + x + y <= 6; ++y)
              for (int z = 0; a + b + d + x + y + z <= 6; ++z)
                for (const auto& f1 : hom_basis(c, a, b).diagrams)
                  for (const auto& f2 : hom_basis(c, b, d).diagrams)
                    for (const auto& g1 : hom_basis(c, x, y).diagrams)
                      for (const auto& g2 : hom_basis(c, y, z).diagrams) {
                        auto f21 = compose(f2, f1);
                        auto g21 = compose(g2, g1);
                        auto lhs = tensor(f21.diagram, g21.diagram);
                        auto rhs = compose(tensor(f2, g2), tensor(f1, g1));
                        p.expect(lhs == rhs.diagram && f21.loops + g21.loops == rhs.loops,
                                 tag + " interchange at " + to_string(f1) + " ; " + to_string(f2) + " ; " +
                                     to_string(g1) + " ; " + to_string(g2));
                      }
  }
  return p.out;
}

// 3
Outcome diag_ex1() {
  Probe p;
  for (DiagramClass c : kAllDiagramClasses) {
    p.expect(check_diag(c, 6).passed(), "diag " + std::string(to_string(c)));
    p.expect(check_ex1(c, 6, kGeneric).passed(), "ex1 " + std::string(to_string(c)));
  }
  return p.out;
}

// 4
Outcome uex_spot() {
  Probe p;
  p.expect(check_uex(parse_lin_morphism("1", kGeneric, 1, 0), DiagramClass::All, 3, kGeneric).passed(), "All");
  for (DiagramClass c : {DiagramClass::EvenBlocks, DiagramClass::EvenManyOddBlocks})
    p.expect(check_uex(parse_lin_morphism("1 2", kGeneric, 2, 0), c, 3, kGeneric).passed(), std::string(to_string(c)));
  return p.out;
}

// 5
Outcome lemma_suite() {
  Probe p;
  p.expect(verify_lemma(Lemma::Absorption, 3, 3, kGeneric).passed(), "absorption");
  p.expect(verify_lemma(Lemma::ComputationH, 3, 3, kGeneric).passed(), "computation");
  for (int j = 0; j <= 4; ++j) {
    const auto x = moebius_xj(j, kGeneric);
    const auto e = symmetrizer(j, kGeneric);
    const auto xe = moebius_xe(j, kGeneric);
    const std::string js = std::to_string(j);
    p.expect(compose(x, x, kGeneric) == x, "x_" + js);
    p.expect(compose(e, e, kGeneric) == e, "e_" + js);
    p.expect(compose(xe, xe, kGeneric) == xe, "x_j e_j at " + js);
  }
  return p.out;
}

// 6: the representing object is complete for every m ≤ i; i = 0 misses [2].
Outcome representable_h() {
  Probe p;
  for (int i = 0; i <= 3; ++i)
    for (int m = 0; m <= i; ++m) {
      auto r = representable_H(i, m, kGeneric);
      p.expect(r.passed(), "i=" + std::to_string(i) + " m=" + std::to_string(m));
    }
  auto bad = representable_H(0, 2, kGeneric);
  p.expect(bad.status == CheckStatus::Fail, "(0,2) did not fail");
  if (bad.status == CheckStatus::Fail) {
    bool deficit_at_2 = false;
    for (const auto& d : bad.witness["deficits"])
      if (d["m"] == 2 && d["image_rank"].get<int>() < d["target_dim"].get<int>()) deficit_at_2 = true;
    p.expect(deficit_at_2, "(0,2) has no rank deficit at m=2");
  }
  return p.out;
}

// 7
Outcome representable_sprime() {
  Probe p;
  p.expect(representable_Sprime(4, kGeneric).passed(), "generic");
  for (const Rational& t : {Rational(5), Rational(-1), Rational(1, 2)})
    p.expect(representable_Sprime(4, FieldSpec::specialized(t)).passed(), "t=" + t.get_str());
  bool errored = false;
  try {
    representable_Sprime(4, FieldSpec::specialized(Rational(0)));
  } catch (const Error& e) {
    errored = std::string(e.what()) == "requires t ≠ 0";
  }
  p.expect(errored, "t=0 did not error cleanly");
  return p.out;
}

// 8: every basis diagram plus seeded random combinations of them.
Outcome splitting() {
  Probe p;
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; m + n <= 4; ++n) {
      const auto dom = kar_word(m, DiagramClass::All, kGeneric);
      const auto cod = kar_word(n, DiagramClass::All, kGeneric);
      const auto& basis = hom_basis(DiagramClass::All, m, n);
      std::vector<LinMorphism> samples;
      for (const auto& d : basis.diagrams) samples.push_back(diagram_morphism(d, kGeneric));
      for (int s = 0; s < 8; ++s) {
        LinMorphism f(m, n);
        for (const auto& d : basis.diagrams)
          if (int c = coeff(rng); c != 0) f.add_term(d, kGeneric.constant(Rational(c)));
        samples.push_back(std::move(f));
      }
      for (const auto& lin : samples) {
        const auto f = kar_morphism(dom, cod, {{lin}}, kGeneric);
        auto w = split_solve(f, kGeneric);
        p.expect(w.has_value(), "no witness for " + to_string(lin));
        if (w) p.expect(kar_compose(f, kar_compose(w->g, f, kGeneric), kGeneric) == f, "fgf ≠ f for " + to_string(lin));
      }
    }
  return p.out;
}

// 9
Outcome cobordism_crosscheck() {
  Probe p;
  p.expect(check_crosscheck_cob(5, 4, kGeneric).passed(), "crosscheck-cob");
  const auto st = st_datum(kGeneric);
  const auto fib = fibonacci_datum(kGeneric);
  const int fibonacci[] = {1, 2, 3, 5, 8};
  for (int i = 0; i <= 4; ++i) {
    p.expect(frobenius_trace(i, st) == kGeneric.t(), "S_t trace " + std::to_string(i));
    p.expect(frobenius_trace(i, fib) == kGeneric.constant(Rational(fibonacci[i])), "fibonacci trace " + std::to_string(i));
  }
  return p.out;
}

// 10
Outcome fp_layer() {
  Probe p;
  const auto cls = DiagramClass::All;
  auto word = [&](int k) { return kar_word(k, cls, kGeneric); };
  auto unit = fp_unit_presentation(cls, kGeneric);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      p.expect(fp_hom(fp_representable(word(a)), fp_representable(word(b)), kGeneric).dimension() ==
                   kar_hom_dimension(word(a), word(b), kGeneric),
               "Yoneda " + std::to_string(a) + "," + std::to_string(b));
      p.expect(fp_hom(fp_embed(word(a), unit), fp_embed(word(b), unit), kGeneric).dimension() ==
                   kar_hom_dimension(word(a), word(b), kGeneric),
               "embedding " + std::to_string(a) + "," + std::to_string(b));
    }

  auto km = [&](const char* text, int dom, int cod) {
    return kar_morphism(word(dom), word(cod), {{parse_lin_morphism(text, kGeneric, dom, cod)}}, kGeneric);
  };
  const auto eps = km("1", 1, 0);

  // Cokernel: Hom(coker φ, T) is the space of maps killing φ.
  for (const auto& phi : {fp_represented(km("1 2' | 1'", 1, 2)), fp_represented(eps), fp_represented(km("1 | 1'", 1, 1))}) {
    const auto c = fp_cokernel(phi);
    p.expect(fp_is_zero(fp_compose(fp_cokernel_projection(phi), phi, kGeneric), kGeneric), "cokernel projection");
    for (int k = 0; k <= 2; ++k) {
      const auto t = fp_representable(word(k));
      auto hs = fp_hom(phi.dst, t, kGeneric).basis;
      std::vector<FpMorphism> images;
      for (const auto& h : hs) images.push_back(fp_compose(h, phi, kGeneric));
      p.expect(fp_hom(c, t, kGeneric).dimension() == hs.size() - fp_rank(images, kGeneric),
               "cokernel universal property at [" + std::to_string(k) + "]");
    }
  }

  // Kernel: Hom(X, ker φ) is the space of maps killed by φ.
  for (const auto& phi : {fp_represented(eps), fp_represented(km("1 2", 2, 0)), fp_represented(km("1 2' | 1'", 1, 2))}) {
    const auto ker = fp_kernel(phi, eps, kGeneric);
    p.expect(fp_is_zero(fp_compose(phi, ker.inclusion, kGeneric), kGeneric), "kernel inclusion");
    for (int k = 0; k <= 2; ++k) {
      const auto x = fp_representable(word(k));
      auto hs = fp_hom(x, phi.src, kGeneric).basis;
      std::vector<FpMorphism> images;
      for (const auto& h : hs) images.push_back(fp_compose(phi, h, kGeneric));
      p.expect(fp_hom(x, ker.object, kGeneric).dimension() == hs.size() - fp_rank(images, kGeneric),
               "kernel universal property at [" + std::to_string(k) + "]");
    }
  }

  // Weak kernels: α κ = 0 and every map killed by α factors through κ.
  for (const auto& alpha : {km("1 2", 2, 0), km("1", 1, 0), km("1 1' | 2", 2, 1)}) {
    auto wk = weak_kernel(alpha, eps, kGeneric);
    p.expect(kar_compose(alpha, wk.kappa, kGeneric).is_zero(), "weak kernel composite");
    for (int k = 0; k <= 2; ++k)
      p.expect(weak_kernel_factors(wk, alpha, word(k), kGeneric), "weak kernel factorisation at [" + std::to_string(k) + "]");
  }
  return p.out;
}

// 11
Outcome cli_round_trip() {
  Probe p;
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; m + n <= 6; ++n)
      for (const auto& d : hom_basis(DiagramClass::All, m, n).diagrams) {
        p.expect(parse_diagram(to_string(d), m, n) == d, "diagram " + to_string(d));
        const auto f = diagram_morphism(d, kGeneric);
        p.expect(parse_lin_morphism(to_string(f), kGeneric, m, n) == f, "morphism " + to_string(f));
      }
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; m + n <= 3; ++n)
      for (const auto& c : enumerate_cobordisms(m, n, 1))
        p.expect(parse_cobordism(to_string(c), m, n) == c, "cobordism " + to_string(c));

  auto run_json = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    run(std::move(args), out, err);
    Json j = Json::parse(out.str());
    j.erase("elapsed_ms");
    return j.dump();
  };
  const std::vector<std::string> args{"check", "ex2", "--samples", "200", "--seed", "7", "--json"};
  const auto first = run_json(args);
  p.expect(first == run_json(args), "ex2 JSON differs between runs");
  return p.out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "basis counts", 5, basis_counts},
      {2, "category laws", 60, category_laws},
      {3, "diag and ex1", 60, diag_ex1},
      {4, "uex spot check", 30, uex_spot},
      {5, "lemma suite", 120, lemma_suite},
      {6, "representability H", 300, representable_h},
      {7, "representability S'", 120, representable_sprime},
      {8, "splitting", 120, splitting},
      {9, "cobordism cross-check", 60, cobordism_crosscheck},
      {10, "fp layer", 60, fp_layer},
      {11, "cli round trip", 60, cli_round_trip},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs >= c.budget_s) o = {false, "over budget"};
    std::printf("%s %2d %-22s %8.3fs (budget %gs)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_s,
                o.ok ? "" : " : ", o.detail.c_str());
    if (!o.ok) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
