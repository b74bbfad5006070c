#include <gtest/gtest.h>

#include <random>

#include "leetor/circle_algebra.hpp"
#include "test_support.hpp"

using namespace leetor;

namespace {

const Diagram& trefoil() {
  static const Diagram d = parse_pd(testing_support::kTrefoil);
  return d;
}

}  // namespace

TEST(CircleAlgebra, SubsetOrderIsLexicographic) {
  // {} < {0} < {0,1} < {0,1,2} < {0,2} < {1} < {1,2} < {2}
  const std::vector<std::uint32_t> order = {0b000, 0b001, 0b011, 0b111, 0b101, 0b010, 0b110, 0b100};
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = 0; b < order.size(); ++b)
      EXPECT_EQ(circle_subset_less(order[a], order[b]), a < b) << a << " " << b;
}

TEST(CircleAlgebra, SquareOfXIsT) {
  const Vertex v{0b111, 3};
  const LeeElement x = LeeElement::monomial(v, 0b010);
  EXPECT_EQ(multiply(x, x), LeeElement::monomial(v, 0, 1));
  EXPECT_TRUE(set_t_zero(multiply(x, x)).is_zero());
}

TEST(CircleAlgebra, ProductIsCommutativeAndAssociative) {
  const Vertex v{0b111, 3};
  std::mt19937 rng(7);
  auto random_element = [&] {
    LeeElement a;
    for (int i = 0; i < 3; ++i)
      a += LeeElement::monomial(v, rng() % 8, static_cast<int>(rng() % 3), Rational(static_cast<int>(rng() % 7) - 3));
    return a;
  };
  for (int trial = 0; trial < 50; ++trial) {
    const LeeElement a = random_element(), b = random_element(), c = random_element();
    EXPECT_EQ(multiply(a, b), multiply(b, a));
    EXPECT_EQ(multiply(multiply(a, b), c), multiply(a, multiply(b, c)));
    EXPECT_EQ(multiply(a, b + c), multiply(a, b) + multiply(a, c));
  }
}

TEST(CircleAlgebra, InjectEdgeVariable) {
  const Resolution r = resolve(trefoil(), Vertex{0b111, 3});
  for (int e = 1; e <= 6; ++e) {
    const LeeElement x = inject_edge_variable(r, e);
    ASSERT_EQ(x.terms().size(), 1u);
    EXPECT_EQ(x.terms().begin()->first.circles, 1u << r.circle(e));
  }
  EXPECT_THROW(inject_edge_variable(r, 0), Error);
  EXPECT_THROW(inject_edge_variable(r, 7), Error);
}

TEST(CircleAlgebra, EdgesOnOneCircleGiveTheSameVariable) {
  const Resolution r = resolve(trefoil(), Vertex{0b001, 3});
  ASSERT_EQ(r.k, 1);
  for (int e = 2; e <= 6; ++e) EXPECT_EQ(inject_edge_variable(r, e), inject_edge_variable(r, 1));
}

TEST(CircleAlgebra, VertexMismatchThrows) {
  const CircleMonomial a{Vertex{0b000, 3}, 1, 0};
  const CircleMonomial b{Vertex{0b001, 3}, 1, 0};
  try {
    multiply(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VertexMismatch);
  }
}

TEST(CircleAlgebra, RelativeDegree) {
  EXPECT_EQ(relative_q_degree(CircleMonomial{Vertex{0, 3}, 0, 0}), 0);
  EXPECT_EQ(relative_q_degree(CircleMonomial{Vertex{0, 3}, 0b11, 0}), -4);
  EXPECT_EQ(relative_q_degree(CircleMonomial{Vertex{0, 3}, 0b1, 2}), -10);
  const Vertex v{0b111, 3};
  for (std::uint32_t a = 0; a < 8; ++a)
    for (std::uint32_t b = 0; b < 8; ++b) {
      const CircleMonomial ma{v, a, 0}, mb{v, b, 1};
      EXPECT_EQ(relative_q_degree(multiply(ma, mb)), relative_q_degree(ma) + relative_q_degree(mb));
    }
}

TEST(CircleAlgebra, Render) {
  const Vertex v{0b011, 3};
  LeeElement a = LeeElement::monomial(v, 0b101, 2, 3);
  a -= LeeElement::monomial(v, 0);
  EXPECT_EQ(render(a), "-1@v=110 + 3*t^2*X0X2@v=110");
  EXPECT_EQ(render(LeeElement{}), "0");
}

TEST(CircleAlgebra, CancellationRemovesTerms) {
  const Vertex v{0, 1};
  LeeElement a = LeeElement::monomial(v, 1, 0, 2);
  a -= LeeElement::monomial(v, 1, 0, 2);
  EXPECT_TRUE(a.is_zero());
}
