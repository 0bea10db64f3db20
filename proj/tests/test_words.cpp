#include "catch_amalgamated.hpp"

#include <misere.hpp>

#include "support.hpp"

using namespace misere;

TEST_CASE("words parse in several spellings", "[words]") {
  Alphabet const a({"x", "z", "a", "b"});
  ExpVec const   w{1, 2, 1, 3};
  CHECK(a.parse("x z^2 a b^3") == w);
  CHECK(a.parse("x*z^2*a*b^3") == w);
  CHECK(a.parse("xz^2ab^3") == w);
  CHECK(a.parse("b^3 z z a x") == w);
  CHECK(a.parse("e") == a.identity());
  CHECK(a.parse("1") == a.identity());
  CHECK(a.format(w) == "xz^2ab^3");
  CHECK(a.format(w, "*") == "x*z^2*a*b^3");
  CHECK(a.format(a.identity()) == "e");
  for (auto bad : {"q", "x^", "x^y", "z^9999999"}) {
    INFO(bad);
    CHECK_THROWS_AS(a.parse(bad), InputError);
  }
}

TEST_CASE("multi-letter generator names use explicit separators", "[words]") {
  Alphabet const a({"x", "x1", "y"});
  CHECK(a.parse("x1^2 x") == ExpVec{1, 2, 0});
  CHECK(a.format(ExpVec{1, 2, 1}) == "x*x1^2*y");
  CHECK_THROWS_AS(Alphabet({"x", "x"}), InputError);
  CHECK_THROWS_AS(Alphabet({"2x"}), InputError);
}

TEST_CASE("monomial order is graded, then favours early generators", "[words]") {
  Alphabet const a({"x", "z", "a", "b"});
  auto lt = [&](char const* u, char const* v) {
    return compare_monomials(a.parse(u), a.parse(v)) < 0;
  };
  CHECK(lt("e", "x"));
  CHECK(lt("b", "x^2"));
  CHECK(lt("x", "z"));
  CHECK(lt("z", "b"));
  CHECK(lt("xz", "xa"));
  CHECK(lt("xb", "z^2"));
  CHECK(lt("z^3", "zb^2"));
  CHECK(compare_monomials(a.parse("zb"), a.parse("bz")) == 0);
}

TEST_CASE("exponent vector arithmetic", "[words]") {
  ExpVec const u{1, 0, 2};
  ExpVec const v{0, 1, 3};
  CHECK(u * v == ExpVec{1, 1, 5});
  CHECK(divides(ExpVec{0, 0, 2}, v));
  CHECK_FALSE(divides(u, v));
  CHECK(quotient(v, ExpVec{0, 1, 1}) == ExpVec{0, 0, 2});
  CHECK(lcm(u, v) == ExpVec{1, 1, 3});
  CHECK(degree(v) == 4);
  CHECK(share_generator(u, v));
  CHECK_FALSE(share_generator(ExpVec{1, 0, 0}, ExpVec{0, 1, 0}));
}

TEST_CASE("presentation files", "[words]") {
  auto const p = Presentation::load(test_support::data_path("q0123.pres"));
  CHECK(p.alphabet.names() == std::vector<std::string>{"x", "z", "a", "b"});
  CHECK(p.relations.size() == 7);
  CHECK(p.game == "0.123");
  CHECK(p.play == "misere");
  CHECK(p.phi.size() == 12);
  CHECK(p.period == std::pair<std::uint32_t, std::uint32_t>{6, 5});
  CHECK(p.p_set.size() == 5);

  auto const k = Presentation::load(test_support::data_path("kayles.pres"));
  CHECK(k.phi.size() == 96);
  CHECK(k.p_set.size() == 9);

  CHECK_THROWS_AS(Presentation::parse("x^2 = e\n"), InputError);
  CHECK_THROWS_AS(Presentation::parse("gens: x\nx = x = x\n"), InputError);
  CHECK_THROWS_AS(Presentation::parse("gens: x\nfoo: 1\n"), InputError);
  CHECK_THROWS_AS(Presentation::parse("gens: x\nperiod: 1\n"), InputError);
  CHECK_THROWS_AS(Presentation::parse("gens: x\ny = e\n"), InputError);
  CHECK_THROWS_AS(Presentation::load("/nonexistent/q.pres"), InputError);
}
