#include <doctest.h>

#include <numeric>

#include "fmachina/functor.hpp"

using namespace fmachina;

namespace {

MonoidPtr z2() {
  static MonoidPtr m = std::make_shared<FiniteMonoid>(
      std::vector<std::string>{"e", "g"}, "e",
      std::vector<std::vector<std::string>>{{"e", "g"}, {"g", "e"}});
  return m;
}

MonoidHomPtr one_into_z2() {
  return std::make_shared<MonoidHom>(FiniteMonoid::trivial(), z2(),
                                     std::map<std::string, std::string>{{"e", "e"}});
}

MonoidHomPtr z2_onto_one() {
  return std::make_shared<MonoidHom>(z2(), FiniteMonoid::trivial(),
                                     std::map<std::string, std::string>{{"e", "e"}, {"g", "e"}});
}

BaseObject z2_regular() {
  return BaseObject::with_action({"x0", "x1"}, z2(), {{0, 1}, {1, 0}});
}

BaseObject trivial_mset(std::vector<std::string> elements, const MonoidPtr& m) {
  std::vector<int> ident(elements.size());
  std::iota(ident.begin(), ident.end(), 0);
  std::vector<std::vector<int>> rows(static_cast<size_t>(m->size()), ident);
  return BaseObject::with_action(std::move(elements), m, std::move(rows));
}

void check_triangle_identities(const Adjunction& adj, const std::vector<BaseObject>& sources,
                               const std::vector<BaseObject>& targets) {
  for (const auto& x : sources) {
    BaseObject fx = adj.left()->apply(x);
    BaseMorphism lifted_unit = adj.left()->apply(unit(adj, x));
    CHECK(compose(counit(adj, fx), lifted_unit) == BaseMorphism::identity(fx));
  }
  for (const auto& y : targets) {
    BaseObject ry = adj.right()->apply(y);
    BaseMorphism lowered_counit = adj.right()->apply(counit(adj, y));
    CHECK(compose(lowered_counit, unit(adj, ry)) == BaseMorphism::identity(ry));
  }
}

void check_transpose_bijection(const Adjunction& adj, const BaseObject& x, const BaseObject& y) {
  BaseObject fx = adj.left()->apply(x);
  BaseObject ry = adj.right()->apply(y);
  for (const auto& f : enumerate_hom(fx, y)) {
    BaseMorphism mate = adj.transpose(x, y, f);
    CHECK(mate.dom() == x);
    CHECK(mate.cod() == ry);
    CHECK(adj.transpose_inv(x, y, mate) == f);
  }
  for (const auto& g : enumerate_hom(x, ry)) {
    CHECK(adj.transpose(x, y, adj.transpose_inv(x, y, g)) == g);
  }
}

}  // namespace

TEST_CASE("identity adjunction transposes nothing") {
  AdjunctionPtr adj = identity_adjunction(BaseCategory{nullptr});
  BaseObject x = BaseObject::plain({"a", "b"});
  CHECK(adj->left()->apply(x) == x);
  check_transpose_bijection(*adj, x, x);
  check_triangle_identities(*adj, {x}, {x});
}

TEST_CASE("pairing with an input object") {
  AdjunctionPtr adj = product_exponential_adjunction(BaseObject::plain({"0", "1"}));
  BaseObject x = BaseObject::plain({"x", "y"});
  BaseObject fx = adj->left()->apply(x);
  CHECK(fx.elements() == std::vector<std::string>{"(x,0)", "(x,1)", "(y,0)", "(y,1)"});

  BaseObject o = BaseObject::plain({"a", "b"});
  BaseObject ro = adj->right()->apply(o);
  CHECK(ro.elements() == std::vector<std::string>{"[a,a]", "[a,b]", "[b,a]", "[b,b]"});
  CHECK(adj->right()->apply(ro).size() == 16);
}

TEST_CASE("counit evaluates a table at an input") {
  AdjunctionPtr adj = product_exponential_adjunction(BaseObject::plain({"0", "1"}));
  BaseObject o = BaseObject::plain({"a", "b"});
  BaseMorphism eps = counit(*adj, o);
  CHECK(eps.apply("([a,b],0)") == "a");
  CHECK(eps.apply("([a,b],1)") == "b");
  CHECK(eps.apply("([b,a],1)") == "a");
}

TEST_CASE("unit tabulates the pairing") {
  AdjunctionPtr adj = product_exponential_adjunction(BaseObject::plain({"0", "1"}));
  BaseObject x = BaseObject::plain({"x", "y"});
  BaseMorphism eta = unit(*adj, x);
  CHECK(eta.apply("x") == "[(x,0),(x,1)]");
  CHECK(eta.apply("y") == "[(y,0),(y,1)]");
}

TEST_CASE("input-product adjunction satisfies the adjunction laws") {
  AdjunctionPtr adj = product_exponential_adjunction(BaseObject::plain({"0", "1"}));
  BaseObject x = BaseObject::plain({"x", "y"});
  BaseObject y = BaseObject::plain({"a", "b"});
  BaseObject one = BaseObject::plain({"*"});
  check_transpose_bijection(*adj, x, y);
  check_transpose_bijection(*adj, one, y);
  check_transpose_bijection(*adj, x, one);
  check_triangle_identities(*adj, {x, one}, {y, one});
}

TEST_CASE("functors preserve identities and composition") {
  AdjunctionPtr adj = product_exponential_adjunction(BaseObject::plain({"0", "1"}));
  BaseObject x = BaseObject::plain({"x", "y"});
  BaseObject y = BaseObject::plain({"a", "b", "c"});
  CHECK(adj->left()->apply(BaseMorphism::identity(x)) ==
        BaseMorphism::identity(adj->left()->apply(x)));
  CHECK(adj->right()->apply(BaseMorphism::identity(y)) ==
        BaseMorphism::identity(adj->right()->apply(y)));
  for (const auto& f : enumerate_hom(x, y)) {
    for (const auto& g : enumerate_hom(y, x)) {
      CHECK(adj->left()->apply(compose(g, f)) ==
            compose(adj->left()->apply(g), adj->left()->apply(f)));
      CHECK(adj->right()->apply(compose(g, f)) ==
            compose(adj->right()->apply(g), adj->right()->apply(f)));
    }
  }
}

TEST_CASE("transposition is natural on both sides") {
  AdjunctionPtr adj = product_exponential_adjunction(BaseObject::plain({"0", "1"}));
  BaseObject x = BaseObject::plain({"x", "y"});
  BaseObject xp = BaseObject::plain({"u"});
  BaseObject y = BaseObject::plain({"a", "b"});
  BaseObject yp = BaseObject::plain({"c", "d"});
  BaseMorphism h = BaseMorphism::from_table(xp, x, {{"u", "y"}});
  BaseMorphism g = BaseMorphism::from_table(y, yp, {{"a", "d"}, {"b", "c"}});
  BaseObject fx = adj->left()->apply(x);
  for (const auto& f : enumerate_hom(fx, y)) {
    BaseMorphism lhs = adj->transpose(xp, yp, compose(g, compose(f, adj->left()->apply(h))));
    BaseMorphism rhs = compose(adj->right()->apply(g), compose(adj->transpose(x, y, f), h));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("degenerate input objects") {
  BaseObject x = BaseObject::plain({"x", "y"});
  BaseObject y = BaseObject::plain({"a", "b"});

  AdjunctionPtr nullary = product_exponential_adjunction(BaseObject::plain({}));
  CHECK(nullary->left()->apply(x).size() == 0);
  CHECK(nullary->right()->apply(y).elements() == std::vector<std::string>{"[]"});
  check_transpose_bijection(*nullary, x, y);
  check_triangle_identities(*nullary, {x}, {y});

  AdjunctionPtr unary = product_exponential_adjunction(BaseObject::plain({"i"}));
  CHECK(unary->left()->apply(x).size() == 2);
  CHECK(unary->right()->apply(y).elements() == std::vector<std::string>{"[a]", "[b]"});
  check_transpose_bijection(*unary, x, y);
}

TEST_CASE("input-product functors refuse monoid actions") {
  CHECK_THROWS_AS(product_exponential_adjunction(z2_regular()), ValidationError);
}

TEST_CASE("transpose rejects mismatched endpoints") {
  AdjunctionPtr adj = product_exponential_adjunction(BaseObject::plain({"0", "1"}));
  BaseObject x = BaseObject::plain({"x"});
  BaseObject y = BaseObject::plain({"a"});
  BaseMorphism wrong = BaseMorphism::identity(x);
  CHECK_THROWS_AS(adj->transpose(x, y, wrong), DiagramError);
  CHECK_THROWS_AS(adj->transpose_inv(x, y, wrong), DiagramError);
}

TEST_CASE("composite adjunction curries one input at a time") {
  AdjunctionPtr inner = product_exponential_adjunction(BaseObject::plain({"p", "q"}));
  AdjunctionPtr outer = product_exponential_adjunction(BaseObject::plain({"u"}));
  AdjunctionPtr adj = compose_adjunctions(outer, inner);

  BaseObject x = BaseObject::plain({"x"});
  BaseObject y = BaseObject::plain({"0", "1"});
  BaseObject fx = adj->left()->apply(x);
  CHECK(fx.elements() ==
        std::vector<std::string>{"((x,p),u)", "((x,q),u)"});
  BaseMorphism f = BaseMorphism::from_table(fx, y, {{"((x,p),u)", "0"}, {"((x,q),u)", "1"}});
  CHECK(adj->transpose(x, y, f).apply("x") == "[[0],[1]]");

  check_transpose_bijection(*adj, x, y);
  check_triangle_identities(*adj, {x}, {y});
}

TEST_CASE("iterated adjunction stacks transposes") {
  AdjunctionPtr base = product_exponential_adjunction(BaseObject::plain({"0", "1"}));
  AdjunctionPtr squared = iterate_adjunction(base, 2);
  BaseObject x = BaseObject::plain({"x"});
  BaseObject y = BaseObject::plain({"a", "b"});
  CHECK(squared->left()->apply(x).size() == 4);
  CHECK(squared->right()->apply(y).size() == 16);
  check_transpose_bijection(*squared, x, y);
  // iterating the right adjoint squares sizes twice over, so keep the
  // triangle-law instance tiny
  check_triangle_identities(*squared, {x}, {BaseObject::plain({"a"})});

  AdjunctionPtr zeroth = iterate_adjunction(base, 0);
  CHECK(zeroth->left()->apply(y) == y);
  check_transpose_bijection(*zeroth, x, y);

  CHECK_THROWS_AS(iterate_adjunction(base, -1), ValidationError);
}

TEST_CASE("restriction reindexes an action along the homomorphism") {
  AdjunctionPtr lower = base_change_lower(one_into_z2());
  BaseObject y = z2_regular();
  BaseObject restricted = lower->right()->apply(y);
  CHECK(restricted.elements() == y.elements());
  CHECK(restricted.base().monoid->size() == 1);
  CHECK(restricted.act(0, 0) == 0);
}

TEST_CASE("extension along the inclusion of the trivial monoid is free") {
  AdjunctionPtr lower = base_change_lower(one_into_z2());
  BaseObject x = trivial_mset({"x", "y"}, FiniteMonoid::trivial());
  BaseObject ext = lower->left()->apply(x);
  CHECK(ext.elements() ==
        std::vector<std::string>{"(e,x)", "(e,y)", "(g,x)", "(g,y)"});
  const int i = ext.index_of("(e,x)");
  CHECK(ext.element(ext.act(1, i)) == "(g,x)");

  check_transpose_bijection(*lower, x, z2_regular());
  check_triangle_identities(*lower, {x}, {z2_regular(), trivial_mset({"a"}, z2())});
}

TEST_CASE("extension collapses along a surjection") {
  // along z2 -> 1, extension identifies each orbit to a point
  AdjunctionPtr lower = base_change_lower(z2_onto_one());
  BaseObject ext = lower->left()->apply(z2_regular());
  CHECK(ext.size() == 1);
  BaseObject fixed = trivial_mset({"a", "b"}, z2());
  CHECK(lower->left()->apply(fixed).size() == 2);
  check_transpose_bijection(*lower, z2_regular(), trivial_mset({"s", "t"}, FiniteMonoid::trivial()));
}

TEST_CASE("equivariant-map objects carry the translation action") {
  AdjunctionPtr upper = base_change_upper(one_into_z2());
  BaseObject x = trivial_mset({"x", "y"}, FiniteMonoid::trivial());
  BaseObject maps = upper->right()->apply(x);
  CHECK(maps.elements() ==
        std::vector<std::string>{"[x,x]", "[x,y]", "[y,x]", "[y,y]"});
  const int i = maps.index_of("[x,y]");
  CHECK(maps.element(maps.act(1, i)) == "[y,x]");

  check_transpose_bijection(*upper, z2_regular(), x);
  check_triangle_identities(*upper, {z2_regular(), trivial_mset({"a"}, z2())}, {x});
}

TEST_CASE("equivariant maps out of a point pick fixed points") {
  AdjunctionPtr upper = base_change_upper(z2_onto_one());
  CHECK(upper->right()->apply(z2_regular()).size() == 0);
  BaseObject fixed = trivial_mset({"a", "b"}, z2());
  CHECK(upper->right()->apply(fixed).size() == 2);
  check_transpose_bijection(*upper, trivial_mset({"s"}, FiniteMonoid::trivial()), fixed);
  check_triangle_identities(*upper, {trivial_mset({"s", "t"}, FiniteMonoid::trivial())},
                            {fixed, z2_regular()});
}

TEST_CASE("the built-in comonadic endofunctor is extension after restriction") {
  AdjunctionPtr adj = base_change_comonadic(one_into_z2());
  CHECK(adj->is_endo());
  BaseObject point = trivial_mset({"*"}, z2());
  CHECK(adj->left()->apply(point).size() == 2);
  CHECK(adj->right()->apply(point).size() == 1);

  BaseObject y = z2_regular();
  CHECK(adj->left()->apply(y).size() == 4);
  CHECK(adj->right()->apply(y).size() == 4);
  check_transpose_bijection(*adj, y, point);
  check_transpose_bijection(*adj, point, y);
  check_triangle_identities(*adj, {y, point}, {y, point});
}

TEST_CASE("specs compare structurally and rebuild the same adjunction") {
  AdjunctionPtr a = product_exponential_adjunction(BaseObject::plain({"0", "1"}));
  AdjunctionPtr b = product_exponential_adjunction(BaseObject::plain({"0", "1"}));
  AdjunctionPtr c = product_exponential_adjunction(BaseObject::plain({"0"}));
  CHECK(spec_equal(a->spec(), b->spec()));
  CHECK_FALSE(spec_equal(a->spec(), c->spec()));

  AdjunctionPtr comp = compose_adjunctions(a, c);
  AdjunctionPtr rebuilt = build_adjunction(comp->spec());
  CHECK(spec_equal(comp->spec(), rebuilt->spec()));
  BaseObject x = BaseObject::plain({"x"});
  CHECK(rebuilt->left()->apply(x) == comp->left()->apply(x));

  AdjunctionPtr iter = iterate_adjunction(a, 3);
  CHECK(spec_equal(iter->spec(), build_adjunction(iter->spec())->spec()));
  CHECK_FALSE(spec_equal(iter->spec(), iterate_adjunction(a, 2)->spec()));

  AdjunctionPtr como = base_change_comonadic(one_into_z2());
  CHECK(spec_equal(como->spec(), build_adjunction(como->spec())->spec()));
  CHECK_FALSE(spec_equal(como->spec(), base_change_lower(one_into_z2())->spec()));
}

TEST_CASE("table objects respect the object size bound") {
  SizeGuard saved = size_guard();
  size_guard().object_bound = 5;
  AdjunctionPtr adj = product_exponential_adjunction(BaseObject::plain({"0", "1"}));
  BaseObject y = BaseObject::plain({"a", "b", "c"});
  CHECK_THROWS_AS(adj->right()->apply(y), SizeLimitError);
  size_guard() = saved;
}
