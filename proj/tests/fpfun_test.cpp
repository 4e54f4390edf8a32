#include <gtest/gtest.h>

#include "diagcat/fpfun.hpp"

using namespace diagcat;

namespace {

const FieldSpec kGeneric = FieldSpec::generic();
constexpr DiagramClass kAll = DiagramClass::All;

LinMorphism L(const char* text, int dom = -1, int cod = -1) { return parse_lin_morphism(text, kGeneric, dom, cod); }
KarObject W(int k) { return kar_word(k, kAll, kGeneric); }
KarMorphism K(const char* text, int dom, int cod) { return kar_morphism(W(dom), W(cod), {{L(text, dom, cod)}}, kGeneric); }

KarMorphism epsilon() { return K("1", 1, 0); }

// dim {h ∈ Hom(N, T) : h ∘ phi = 0}
std::size_t killing_dimension(const FpMorphism& phi, const FpObject& t) {
  auto hs = fp_hom(phi.dst, t, kGeneric).basis;
  std::vector<FpMorphism> images;
  for (const auto& h : hs) images.push_back(fp_compose(h, phi, kGeneric));
  return hs.size() - fp_rank(images, kGeneric);
}

}  // namespace

TEST(FpFun, YonedaEndomorphisms) {
  auto p = fp_representable(W(1));
  EXPECT_EQ(fp_hom(p, p, kGeneric).dimension(), 2u);
  auto p2 = fp_representable(W(2));
  EXPECT_EQ(fp_hom(p2, p2, kGeneric).dimension(), 15u);
}

TEST(FpFun, IdentityPresentationIsZero) {
  auto zero = fp_object(kar_identity(W(1)));
  EXPECT_EQ(fp_hom(zero, fp_representable(W(1)), kGeneric).dimension(), 0u);
  EXPECT_EQ(fp_hom(zero, zero, kGeneric).dimension(), 0u);
}

TEST(FpFun, EmbedIsFullyFaithful) {
  auto unit = fp_unit_presentation(kAll, kGeneric);
  EXPECT_EQ(fp_embed(W(0), unit), unit);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      auto h = fp_hom(fp_embed(W(a), unit), fp_embed(W(b), unit), kGeneric);
      EXPECT_EQ(h.dimension(), kar_hom_dimension(W(a), W(b), kGeneric)) << a << " " << b;
    }
  // ε stays non-zero after embedding.
  EXPECT_FALSE(fp_is_zero(fp_embed(epsilon(), unit), kGeneric));
}

TEST(FpFun, CokernelExamples) {
  auto m = fp_representable(W(1));
  auto n = fp_representable(W(2));
  auto c_id = fp_cokernel(fp_identity(m));
  EXPECT_EQ(fp_hom(c_id, n, kGeneric).dimension(), 0u);
  EXPECT_EQ(fp_hom(c_id, c_id, kGeneric).dimension(), 0u);

  FpMorphism zero{m, n, kar_zero(W(1), W(2)), kar_zero(m.relations(), n.relations())};
  auto c_zero = fp_cokernel(zero);
  EXPECT_EQ(fp_hom(c_zero, c_zero, kGeneric).dimension(), fp_hom(n, n, kGeneric).dimension());

  auto c_eps = fp_cokernel(fp_represented(epsilon()));
  EXPECT_EQ(fp_hom(c_eps, c_eps, kGeneric).dimension(), 0u);
}

TEST(FpFun, CokernelUniversalProperty) {
  auto phi = fp_represented(K("1 2' | 1'", 1, 2));
  auto c = fp_cokernel(phi);
  EXPECT_TRUE(fp_is_zero(fp_compose(fp_cokernel_projection(phi), phi, kGeneric), kGeneric));
  for (int k = 0; k <= 2; ++k) {
    auto t = fp_representable(W(k));
    EXPECT_EQ(fp_hom(c, t, kGeneric).dimension(), killing_dimension(phi, t)) << k;
  }
}

TEST(FpFun, WeakKernelSequence) {
  auto alpha = K("1 2", 2, 0);
  auto wk = weak_kernel(alpha, epsilon(), kGeneric);
  EXPECT_TRUE(kar_compose(alpha, wk.kappa, kGeneric).is_zero());
  for (int k = 0; k <= 2; ++k) EXPECT_TRUE(weak_kernel_factors(wk, alpha, W(k), kGeneric)) << k;
  EXPECT_THROW(weak_kernel(alpha, kar_zero(W(1), W(0)), kGeneric), Error);
}

TEST(FpFun, KernelOfSplitEpi) {
  auto phi = fp_represented(epsilon());
  auto ker = fp_kernel(phi, epsilon(), kGeneric);
  EXPECT_TRUE(fp_is_zero(fp_compose(phi, ker.inclusion, kGeneric), kGeneric));
  auto std_rep = fp_representable(kar_object(1, L("1 1' - (1/t) * 1 | 1'"), kAll, kGeneric));
  EXPECT_EQ(fp_hom(ker.object, ker.object, kGeneric).dimension(), 1u);
  EXPECT_EQ(fp_hom(ker.object, std_rep, kGeneric).dimension(), 1u);
  EXPECT_EQ(fp_hom(std_rep, ker.object, kGeneric).dimension(), 1u);
  // dim Hom(X, ker) + rank = dim Hom(X, [1])
  for (int x = 0; x <= 2; ++x) {
    auto rx = fp_representable(W(x));
    EXPECT_EQ(fp_hom(rx, ker.object, kGeneric).dimension() + kar_hom_dimension(W(x), W(0), kGeneric),
              kar_hom_dimension(W(x), W(1), kGeneric))
        << x;
  }
}

TEST(FpFun, KernelTrivialCases) {
  auto m = fp_representable(W(1));
  auto n = fp_representable(W(2));
  FpMorphism zero{m, n, kar_zero(W(1), W(2)), kar_zero(m.relations(), n.relations())};
  auto k0 = fp_kernel(zero, epsilon(), kGeneric);
  EXPECT_EQ(fp_hom(k0.object, k0.object, kGeneric).dimension(), fp_hom(m, m, kGeneric).dimension());
  auto kid = fp_kernel(fp_identity(m), epsilon(), kGeneric);
  EXPECT_EQ(fp_hom(kid.object, kid.object, kGeneric).dimension(), 0u);
}

TEST(FpFun, TextRoundTrip) {
  auto unit = fp_unit_presentation(kAll, kGeneric);
  auto s = to_string(unit, kGeneric);
  EXPECT_EQ(s, "coker( [1]@id → [1]@id : {-(1)/(t) * 1 | 1' + 1 * 1 1'} )");
  EXPECT_EQ(parse_fp_object(s, kAll, kGeneric), unit);
  auto rep = fp_representable(W(2));
  EXPECT_EQ(to_string(rep, kGeneric), "coker( 0 → [2]@id : {} )");
  EXPECT_EQ(parse_fp_object(to_string(rep, kGeneric), kAll, kGeneric), rep);
  EXPECT_THROW(parse_fp_object("[1]@id", kAll, kGeneric), ParseError);
}
