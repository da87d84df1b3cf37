#include <gtest/gtest.h>

#include <random>

#include "formint/adic.hpp"
#include "formint/io.hpp"
#include "oracles.hpp"

using namespace formint;

namespace {

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

using Dims = std::vector<std::size_t>;

FiniteAlgebra square_zero_plane(const Field& f) {
  return monomial_quotient(f, {"x", "y"}, {{2, 0}, {1, 1}, {0, 2}});
}

std::vector<Vector> gens(const FiniteAlgebra& a, const std::string& text) { return parse_generators(a, text); }

// every kernel element at every step multiplies to zero with every other
void expect_valid_tower(const FiniteAlgebra& a, const std::vector<Vector>& g) {
  SquareZeroTower tower = decompose_artinian(a, g);
  TowerVerification v = verify_tower(a, tower);
  EXPECT_TRUE(v.algebra_maps);
  EXPECT_TRUE(v.kernels_exact);
  EXPECT_TRUE(v.square_zero);
  EXPECT_TRUE(v.composite);
  EXPECT_EQ(tower.length(), *ideal_powers(a, g).nilpotency_index);
}

}  // namespace

TEST(FiniteAlgebra, MonomialQuotientBasis) {
  FiniteAlgebra a = truncated_polynomial_algebra(F2, 3);
  EXPECT_EQ(a.labels(), (std::vector<std::string>{"1", "x", "x^2"}));
  EXPECT_TRUE(is_zero(a.product(2, 1)));
  EXPECT_EQ(a.product(1, 1), a.basis_vector(2));

  FiniteAlgebra b = monomial_quotient(F3, {"x", "y"}, {{3, 0}, {0, 2}});
  EXPECT_EQ(b.dim(), 6U);
  EXPECT_EQ(b.labels(), (std::vector<std::string>{"1", "x", "y", "x^2", "x*y", "x^2*y"}));

  EXPECT_EQ(square_zero_plane(F2).dim(), 3U);
}

TEST(FiniteAlgebra, ValidatorRejectsBadTables) {
  const Coefficient z = Coefficient::zero(F2), o = Coefficient::one(F2);
  // e0 e1 = e1 but e1 e0 = 0
  std::vector<Coefficient> noncomm{o, z, z, o, z, z, z, z};
  try {
    FiniteAlgebra(F2, {"1", "e"}, noncomm, {o, z});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidAlgebra);
  }
  // e0 acts as the unit on itself only
  std::vector<Coefficient> nounit{o, z, z, z, z, z, z, o};
  EXPECT_THROW(FiniteAlgebra(F2, {"a", "b"}, nounit, {o, z}), Error);
  // e^2 = 1 + e is a field of order 4
  std::vector<Coefficient> good{o, z, z, o, z, o, o, o};
  EXPECT_NO_THROW(FiniteAlgebra(F2, {"1", "e"}, good, {o, z}));
  EXPECT_THROW(FiniteAlgebra(F2, {"1", "e"}, {o, z}, {o, z}), Error);
  EXPECT_THROW(monomial_quotient(F2, {"x", "y"}, {{2, 0}}), Error);
}

TEST(FiniteAlgebra, ValidatorRejectsNonAssociative) {
  // a*a = b, a*b = 0, b*b = a: (aa)b = a but a(ab) = 0
  const Coefficient z = Coefficient::zero(F3), o = Coefficient::one(F3);
  std::vector<Coefficient> t(27, z);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k) { t[(i * 3 + j) * 3 + k] = o, t[(j * 3 + i) * 3 + k] = o; };
  set(0, 0, 0);
  set(0, 1, 1);
  set(0, 2, 2);
  set(1, 1, 2);
  set(2, 2, 1);
  try {
    FiniteAlgebra(F3, {"1", "a", "b"}, t, {o, z, z});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidAlgebra);
    EXPECT_NE(std::string(e.what()).find("associative"), std::string::npos);
  }
}

TEST(IdealPowers, Examples) {
  FiniteAlgebra a = truncated_polynomial_algebra(F2, 3);
  IdealChain c = ideal_powers(a, gens(a, "x"));
  EXPECT_EQ(c.dims(), (Dims{3, 2, 1, 0}));
  EXPECT_EQ(c.nilpotency_index, 3U);

  IdealChain zero = ideal_powers(a, {});
  EXPECT_EQ(zero.dims(), (Dims{3, 0}));
  EXPECT_EQ(zero.nilpotency_index, 1U);

  FiniteAlgebra p = square_zero_plane(Field::rationals());
  IdealChain q = ideal_powers(p, gens(p, "x; y"));
  EXPECT_EQ(q.dims(), (Dims{3, 2, 0}));
  EXPECT_EQ(q.nilpotency_index, 2U);
}

TEST(IdealPowers, StableNonzeroChainHasNoIndex) {
  FiniteAlgebra a = parse_algebra_presentation("F3[x]/(x^2) * F3");
  IdealChain c = ideal_powers(a, gens(a, "(0,1)"));
  EXPECT_EQ(c.dims(), (Dims{3, 1}));
  EXPECT_FALSE(c.nilpotency_index);
  try {
    decompose_artinian(a, gens(a, "(0,1)"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotNilpotent);
  }
  EXPECT_THROW(graded_generation(a, gens(a, "(1,0)")), Error);
  EXPECT_THROW(ideal_powers(a, {zero_vector(F3, 2)}), Error);
}

TEST(DecomposeArtinian, TruncatedPolynomial) {
  FiniteAlgebra a = truncated_polynomial_algebra(F2, 3);
  SquareZeroTower t = decompose_artinian(a, gens(a, "x"));
  EXPECT_EQ(t.length(), 3U);
  EXPECT_EQ(t.kernel_dims(), (Dims{1, 1}));
  EXPECT_EQ(t.algebras.front().dim(), 3U);
  EXPECT_EQ(t.algebras.back().dim(), 1U);
  expect_valid_tower(a, gens(a, "x"));
}

TEST(DecomposeArtinian, ZeroIdealIsEmptyDecomposition) {
  FiniteAlgebra a = truncated_polynomial_algebra(F3, 2);
  SquareZeroTower t = decompose_artinian(a, {});
  EXPECT_EQ(t.length(), 1U);
  EXPECT_TRUE(t.surjections.empty());
  EXPECT_EQ(t.algebras.front().dim(), 2U);
  EXPECT_TRUE(verify_tower(a, t).ok());
}

TEST(DecomposeArtinian, ProductAlgebra) {
  FiniteAlgebra a = parse_algebra_presentation("F3[x]/(x^2) * F3");
  SquareZeroTower t = decompose_artinian(a, gens(a, "(x,0)"));
  EXPECT_EQ(t.length(), 2U);
  EXPECT_EQ(t.kernel_dims(), (Dims{1}));
  EXPECT_TRUE(verify_tower(a, t).ok());
}

TEST(DecomposeArtinian, TamperedTowerIsCaught) {
  FiniteAlgebra a = truncated_polynomial_algebra(F2, 4);
  SquareZeroTower t = decompose_artinian(a, gens(a, "x"));
  SquareZeroTower bad = t;
  bad.kernels[0].push_back(t.algebras[0].basis_vector(1));
  TowerVerification v = verify_tower(a, bad);
  EXPECT_FALSE(v.kernels_exact);
  EXPECT_FALSE(v.square_zero);
  bad = t;
  bad.quotient_map[0][0] = Coefficient::zero(F2);
  EXPECT_FALSE(verify_tower(a, bad).composite);
}

TEST(GradedGeneration, Examples) {
  FiniteAlgebra a = truncated_polynomial_algebra(F2, 3);
  GradedReport r = graded_generation(a, gens(a, "x"));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.dims_gr, (Dims{1, 1, 0}));
  EXPECT_EQ(r.dims_sym_bound, (Dims{1, 1, 1}));

  FiniteAlgebra p = square_zero_plane(F2);
  GradedReport q = graded_generation(p, gens(p, "x; y"));
  EXPECT_TRUE(q.pass);
  EXPECT_EQ(q.dims_gr, (Dims{2, 0}));
  EXPECT_EQ(q.dims_sym_bound, (Dims{2, 3}));

  GradedReport vacuous = graded_generation(p, {});
  EXPECT_TRUE(vacuous.pass);
  EXPECT_TRUE(vacuous.failing_degrees.empty());
}

TEST(AdicInvariants, IdealChainsAreIdealsAndMultiplicative) {
  for (const char* text : {"F2[x]/(x^5)", "F3[x,y]/(x^3,y^2)", "F2[x,y]/(x^2,y^2)", "Q[x,y,z]/(x^2,y^2,z^2,x*y*z)"}) {
    FiniteAlgebra a = parse_algebra_presentation(text);
    std::vector<Vector> g;
    for (std::size_t i = 1; i < a.dim(); ++i)
      if (a.labels()[i].find('*') == std::string::npos && a.labels()[i].find('^') == std::string::npos)
        g.push_back(a.basis_vector(i));
    IdealChain c = ideal_powers(a, g);
    ASSERT_TRUE(c.nilpotency_index) << text;
    const std::size_t m = *c.nilpotency_index;
    const Subspace whole = Subspace::full(a.field(), a.dim());
    for (std::size_t k = 0; k + 1 < c.powers.size(); ++k) EXPECT_TRUE(c.powers[k].contains(c.powers[k + 1]));
    for (std::size_t k = 0; k <= m; ++k) {
      EXPECT_TRUE(c.power(k).contains(product_span(a, whole, c.power(k)))) << text << " k=" << k;
      for (std::size_t l = 0; k + l <= m; ++l)
        EXPECT_TRUE(c.power(k + l).contains(product_span(a, c.power(k), c.power(l))));
    }
    expect_valid_tower(a, g);
    EXPECT_TRUE(graded_generation(a, g).pass) << text;
  }
}

TEST(AdicInvariants, MatchesBruteForceSpans) {
  std::mt19937 rng(21);
  std::vector<std::string> algebras{"F2[x]/(x^6)", "F3[x]/(x^5)", "F2[x,y]/(x^2,y^3)", "F3[x,y]/(x^2,x*y,y^2)",
                                    "F2[x,y,z]/(x^2,y^2,z^2)", "F2[x]/(x^3) * F2[y]/(y^3)", "F3[x]/(x^2) * F3"};
  for (const auto& text : algebras) {
    FiniteAlgebra a = parse_algebra_presentation(text);
    ASSERT_LE(a.dim(), 8U);
    const auto p = a.field().characteristic();
    std::uniform_int_distribution<long> coord(0, static_cast<long>(p) - 1);
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<Vector> g;
      const int count = 1 + trial % 3;
      for (int i = 0; i < count; ++i) {
        Vector v;
        for (std::size_t k = 0; k < a.dim(); ++k) v.push_back(Coefficient(a.field(), coord(rng)));
        g.push_back(v);
      }
      if (a.dim() <= 6) {
        EXPECT_EQ(ideal_powers(a, g).dims(), oracle::brute_force_power_dims(a, g)) << text;
      }
      IdealChain c = ideal_powers(a, g);
      if (c.nilpotency_index) {
        expect_valid_tower(a, g);
        EXPECT_TRUE(graded_generation(a, g).pass);
      } else {
        EXPECT_THROW(decompose_artinian(a, g), Error);
      }
    }
  }
}

TEST(AlgebraIO, JsonRoundTrip) {
  FiniteAlgebra a = parse_algebra_presentation("F3[x,y]/(x^2,y^2)");
  FiniteAlgebra b = algebra_from_json(to_json(a));
  EXPECT_EQ(b.labels(), a.labels());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) EXPECT_EQ(a.product(i, j), b.product(i, j));

  json j = json::parse(R"({"field": "Q", "dim": 2, "unit": [1, 0], "products": [[0, 0, [1, 0]], [0, 1, [0, 1]]]})");
  FiniteAlgebra dual = algebra_from_json(j);
  EXPECT_EQ(dual.labels(), (std::vector<std::string>{"e0", "e1"}));
  EXPECT_TRUE(is_zero(dual.product(1, 1)));
  EXPECT_EQ(dual.product(1, 0), dual.basis_vector(1));

  for (const char* bad : {R"({"field": "F4", "dim": 1, "unit": [1], "products": []})",
                          R"({"field": "Q", "dim": 2, "unit": [1], "products": []})",
                          R"({"field": "Q", "dim": 1, "unit": [1], "products": [[0, 3, [1]]]})",
                          R"({"field": "Q", "unit": [1]})"})
    EXPECT_THROW(algebra_from_json(json::parse(bad)), Error) << bad;
}

TEST(AlgebraIO, PresentationsAndGenerators) {
  FiniteAlgebra a = parse_algebra_presentation("F2[x]/(x^3)");
  EXPECT_EQ(a.dim(), 3U);
  EXPECT_EQ(gens(a, "0,1,1").front(), (Vector{Coefficient(F2, 0L), Coefficient(F2, 1L), Coefficient(F2, 1L)}));
  EXPECT_EQ(gens(a, "x; x^2").size(), 2U);
  EXPECT_TRUE(gens(a, "  ").empty());
  EXPECT_THROW(gens(a, "y"), Error);
  EXPECT_THROW(gens(a, "1,0"), Error);
  EXPECT_THROW(parse_algebra_presentation("F2[x]/(x+1)"), Error);
  EXPECT_THROW(parse_algebra_presentation("F2[x]"), Error);
  EXPECT_THROW(parse_algebra_presentation("F4"), Error);
  EXPECT_THROW(load_algebra("/nonexistent/algebra.json"), Error);
}
