#include <gtest/gtest.h>

#include "diagcat/karoubi.hpp"

using namespace diagcat;

namespace {

const FieldSpec kGeneric = FieldSpec::generic();

LinMorphism L(const char* text, int dom = -1, int cod = -1, const FieldSpec& field = kGeneric) {
  return parse_lin_morphism(text, field, dom, cod);
}

KarMorphism single(const LinMorphism& f, DiagramClass cls, const FieldSpec& field) {
  return kar_morphism(kar_word(f.dom(), cls, field), kar_word(f.cod(), cls, field), {{f}}, field);
}

}  // namespace

TEST(Karoubi, Objects) {
  auto one = kar_object(1, identity_morphism(1, kGeneric), DiagramClass::All, kGeneric);
  EXPECT_EQ(to_string(one, kGeneric), "[1]@id");
  auto x2 = kar_object(2, moebius_xe(2, kGeneric), DiagramClass::EvenBlocks, kGeneric);
  EXPECT_EQ(to_string(x2, kGeneric), "[2]@x_2*e_2");
  auto x1 = kar_object(1, e1_sprime(kGeneric), DiagramClass::EvenManyOddBlocks, kGeneric);
  EXPECT_EQ(to_string(x1, kGeneric), "[1]@e_1'");
  try {
    kar_object(1, L("1 | 1'"), DiagramClass::All, kGeneric);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("not idempotent"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("t-1"), std::string::npos);
  }
  EXPECT_THROW(kar_object(1, L("1 | 1'").scaled(kGeneric.t_power(-1)), DiagramClass::EvenBlocks, kGeneric), Error);
}

TEST(Karoubi, TextRoundTrip) {
  const std::string text = "[0]@id⊕[1]@e_1'⊕[2]@x_2*e_2⊕[2]@e_2⊕[2]@x_2";
  auto x = parse_kar_object(text, DiagramClass::All, kGeneric);
  EXPECT_EQ(to_string(x, kGeneric), text);
  auto inline_obj = parse_kar_object("[1]@((1/t) * 1 | 1')", DiagramClass::All, kGeneric);
  EXPECT_EQ(to_string(inline_obj, kGeneric), "[1]@e_1'");
  EXPECT_THROW(parse_kar_object("[2]@x_3", DiagramClass::All, kGeneric), Error);
  EXPECT_THROW(parse_kar_object("[2]@y_2", DiagramClass::All, kGeneric), Error);

  auto eps = single(L("1", 1, 0), DiagramClass::All, kGeneric);
  auto s = to_string(eps, kGeneric);
  EXPECT_EQ(s, "[1]@id → [0]@id : {1 * 1}");
  EXPECT_EQ(parse_kar_matrix("{1 * 1}", eps.dom, eps.cod, kGeneric), eps);
}

TEST(Karoubi, ComposeAndTensor) {
  auto xe2 = kar_object(2, moebius_xe(2, kGeneric), DiagramClass::All, kGeneric);
  auto unit = kar_word(0, DiagramClass::All, kGeneric);
  auto p2 = kar_morphism(xe2, unit, {{compose(p_morphism(2, kGeneric), moebius_xe(2, kGeneric), kGeneric)}}, kGeneric);
  EXPECT_EQ(kar_compose(kar_identity(unit), p2, kGeneric), p2);
  EXPECT_EQ(kar_compose(p2, kar_identity(xe2), kGeneric), p2);

  // (f ⊕ 0) ⊗ id_1 = f ⊕ 0
  auto zero_obj = kar_direct_sum({kar_word(1, DiagramClass::All, kGeneric)});
  auto f0 = kar_row({p2, kar_zero(zero_obj, unit)});
  auto t = kar_tensor(f0, kar_identity(unit));
  EXPECT_EQ(t.entries, f0.entries);
  EXPECT_EQ(t.dom.words, f0.dom.words);

  // Non-absorbing matrices are rejected.
  EXPECT_THROW(kar_morphism(xe2, unit, {{p_morphism(2, kGeneric)}}, kGeneric), Error);

  // Interchange on Karoubi morphisms.
  auto a = single(L("1 1' - 1 | 1'", 1, 1), DiagramClass::All, kGeneric);
  auto b = single(L("1 2' | 2 1'", 2, 2), DiagramClass::All, kGeneric);
  auto c = single(L("1 | 1'", 1, 1), DiagramClass::All, kGeneric);
  auto d = single(L("1 2 | 1' 2'", 2, 2), DiagramClass::All, kGeneric);
  EXPECT_EQ(kar_tensor(kar_compose(c, a, kGeneric), kar_compose(d, b, kGeneric)),
            kar_compose(kar_tensor(c, d), kar_tensor(a, b), kGeneric));
}

TEST(Karoubi, HomDimensions) {
  auto w = [](int k) { return kar_word(k, DiagramClass::All, kGeneric); };
  EXPECT_EQ(kar_hom_dimension(w(1), w(1), kGeneric), 2u);
  EXPECT_EQ(kar_hom_dimension(w(2), w(1), kGeneric), 5u);
  auto sum = kar_direct_sum({w(0), w(1)});
  EXPECT_EQ(kar_hom_dimension(sum, sum, kGeneric), 1u + 1u + 1u + 2u);
  auto x1 = kar_object(1, e1_sprime(kGeneric), DiagramClass::All, kGeneric);
  EXPECT_EQ(kar_hom_dimension(x1, x1, kGeneric), 1u);
}

TEST(Karoubi, SplitEpsilon) {
  auto eps = single(L("1", 1, 0), DiagramClass::All, kGeneric);
  auto w = split_solve(eps, kGeneric);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->g.entries[0][0], L("1'", 0, 1).scaled(kGeneric.t_power(-1)));
  EXPECT_EQ(kar_compose(eps, w->kernel_idem, kGeneric), kar_zero(eps.dom, eps.cod));
  EXPECT_EQ(w->denominators, std::vector<std::string>{"t"});
  EXPECT_EQ(kar_compose(w->gf, w->gf, kGeneric), w->gf);
  EXPECT_EQ(kar_compose(w->fg, w->fg, kGeneric), w->fg);

  auto z = FieldSpec::specialized(Rational(0));
  EXPECT_FALSE(split_solve(single(L("1", 1, 0, z), DiagramClass::All, z), z).has_value());
}

TEST(Karoubi, SplitZero) {
  auto w0 = kar_word(2, DiagramClass::All, kGeneric), w1 = kar_word(1, DiagramClass::All, kGeneric);
  auto w = split_solve(kar_zero(w0, w1), kGeneric);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->g.is_zero());
}

TEST(Karoubi, GenericSemisimplicitySweep) {
  for (int total = 0; total <= 4; ++total)
    for (int m = 0; m <= total; ++m) {
      const int n = total - m;
      for (const auto& d : hom_basis(DiagramClass::All, m, n).diagrams) {
        auto f = single(diagram_morphism(d, kGeneric), DiagramClass::All, kGeneric);
        auto w = split_solve(f, kGeneric);
        ASSERT_TRUE(w.has_value()) << to_string(d);
        EXPECT_EQ(kar_compose(f, kar_compose(w->g, f, kGeneric), kGeneric), f);
      }
    }
}

TEST(Karoubi, KernelObjectOfSplitEpi) {
  auto eps = single(L("1", 1, 0), DiagramClass::All, kGeneric);
  auto w = split_solve(eps, kGeneric);
  ASSERT_TRUE(w.has_value());
  auto k = kernel_object(eps, *w);
  EXPECT_EQ(k.idem[0][0], L("1 1' - (1/t) * 1 | 1'"));
  EXPECT_EQ(kar_hom_dimension(k, k, kGeneric), 1u);
  auto inc = kernel_inclusion(eps, *w);
  EXPECT_TRUE(kar_compose(eps, inc, kGeneric).is_zero());
}
