#include "catch_amalgamated.hpp"

#include <set>
#include <sstream>

#include <misere.hpp>

#include "support.hpp"

using namespace misere;

namespace {

  // Phi carried to heap 19 by the presentation's period.
  QuotientAnalysis const& qa() {
    static auto const q = extend_phi(test_support::q0123(), 19);
    return q;
  }

  element el(char const* w) {
    return qa().monoid.parse(w);
  }

  std::string star(element u) {
    auto const& m = qa().monoid;
    return m.alphabet().format(m.words()[u], "*");
  }

  char pn(element u) {
    return qa().is_p(u) ? 'P' : 'N';
  }

  std::set<element> elements_of(std::vector<std::string> const& words) {
    std::set<element> out;
    for (auto const& w : words) {
      out.insert(el(w.c_str()));
    }
    return out;
  }

  VerifierConfig with(VerifierEngine e) {
    VerifierConfig cfg;
    cfg.engine = e;
    return cfg;
  }

  QuotientAnalysis mutated_partition(element u) {
    auto m     = qa();
    m.p_set[u] = !m.p_set[u];
    return m;
  }

}  // namespace

TEST_CASE("no P to P translates with basis x", "[verifier][published]") {
  std::vector<std::string> const published{
      "1->0 (e,x) (N,P)",           "3->0 (x*z,x) (N,P)",       "3->1 (x*z,e) (N,N)",
      "4->1 (x*z,e) (N,N)",         "4->2 (x*z,x) (N,P)",       "5->2 (e,x) (N,P)",
      "5->3 (e,x*z) (N,N)",         "6->3 (x*b^2,x*z) (N,N)",   "6->4 (x*b^2,x*z) (N,N)",
      "7->4 (x,x*z) (P,N)",         "7->5 (x,e) (P,N)",         "8->5 (x*a,e) (P,N)",
      "8->6 (x*a,x*b^2) (P,N)",     "9->6 (x*b,x*b^2) (N,N)",   "9->7 (x*b,x) (N,P)",
      "10->7 (e,x) (N,P)",          "10->8 (e,x*a) (N,P)",      "11->8 (x*b^2,x*a) (N,P)",
      "11->9 (x*b^2,x*b) (N,N)",    "12->9 (x,x*b) (P,N)",      "12->10 (x,e) (P,N)"};
  std::vector<std::string> rows;
  for (auto const& tr : translate_table(qa(), 12, el("x"))) {
    auto const t = tr.pair.t.empty() ? std::string("0") : std::to_string(tr.pair.t.heaps()[0]);
    std::ostringstream row;
    row << tr.pair.f << "->" << t << " (" << star(tr.from) << "," << star(tr.to) << ") ("
        << pn(tr.from) << "," << pn(tr.to) << ")";
    rows.push_back(row.str());
  }
  CHECK(rows == published);
  CHECK(check_no_PP(qa(), 12).empty());
}

TEST_CASE("translates of the form (xb, P)", "[verifier][published]") {
  // basis, f, t, move pair
  std::set<std::tuple<std::string, heap_size, heap_size, std::string, std::string>> const
      published{{"x", 9, 7, "b", "e"},   {"b", 5, 3, "x", "z"},   {"b", 10, 8, "x", "a"},
                {"xzb", 3, 1, "z", "x"}, {"xzb", 8, 5, "a", "x"}, {"xzb", 4, 1, "z", "x"}};
  std::set<std::tuple<std::string, heap_size, heap_size, std::string, std::string>> got;
  auto const& m = qa().monoid;
  for (auto const& tr : translates_to_p(qa(), 12, el("xb"))) {
    CHECK(tr.from == el("xb"));
    CHECK(qa().is_p(tr.to));
    auto const t = tr.pair.t.empty() ? heap_size{0} : tr.pair.t.heaps()[0];
    got.emplace(m.name(tr.basis), tr.pair.f, t, m.name(tr.pair.lhs), m.name(tr.pair.rhs));
  }
  CHECK(got == published);
}

// The published solution sets for Phi(U) = bxz omit z^3, although
// z^3 bxz = xb z^4 = xb z^2 = xb.  For U = {4,9,10} that adds a seventh
// (U, s) case, covered by the same winning move as s = z.
TEST_CASE("subsemigroups and solution sets over subsets of {4,8,9,10}", "[verifier][published]") {
  struct Row {
    std::vector<heap_size>   u;
    std::vector<std::string> s_of_u;
    char const*              phi;
    std::vector<std::string> sols;
  };
  std::vector<Row> const published{
      {{4}, {"1", "z", "z^2", "z^3"}, "z", {"bxz"}},
      {{8}, {"1", "a"}, "a", {"bxz"}},
      {{9}, {"1", "b", "b^2", "xb^2"}, "b", {"x", "xz^2", "axz"}},
      {{10}, {"1", "x"}, "x", {"b"}},
      {{4, 8}, {"1", "z", "a", "z^2", "az", "z^3"}, "za", {"bx"}},
      {{4, 9}, {"1", "z", "b", "z^2", "bz", "b^2", "z^3", "b^2z", "xb^2", "b^2xz"}, "zb",
       {"xz", "ax", "xz^3"}},
      {{4, 10}, {"1", "z", "x", "z^2", "xz", "z^3", "xz^2", "xz^3"}, "zx", {"bz"}},
      {{8, 9}, {"1", "a", "b", "bz", "b^2", "b^2z", "b^2x", "b^2xz"}, "zb", {"xz", "ax", "xz^3"}},
      {{8, 10}, {"1", "x", "a", "ax"}, "ax", {"bz"}},
      {{9, 10}, {"1", "b", "x", "b^2", "bx", "b^2x"}, "bx", {"1", "z^2", "az"}},
      {{4, 8, 9},
       {"1", "z", "a", "b", "z^2", "az", "bz", "b^2", "z^3", "b^2z", "b^2x", "b^2xz"},
       "b",
       {"x", "xz^2", "axz"}},
      {{4, 8, 10},
       {"1", "z", "a", "x", "z^2", "az", "xz", "ax", "z^3", "xz^2", "axz", "xz^3"},
       "zax",
       {"b"}},
      {{4, 9, 10},
       {"1", "z", "b", "x", "z^2", "bz", "xz", "b^2", "bx", "z^3", "xz^2", "b^2z", "bxz", "b^2x",
        "xz^3", "b^2xz"},
       "bxz",
       {"z", "a", "z^3"}},
      {{8, 9, 10},
       {"1", "b", "a", "x", "b^2", "bz", "bx", "ax", "b^2x", "b^2z", "bxz", "b^2xz"},
       "bxz",
       {"z", "a", "z^3"}},
      {{4, 8, 9, 10},
       {"1", "a", "b", "x", "z", "bz", "ax", "az", "b^2", "bx", "xz", "z^2", "b^2z", "bxz", "axz",
        "z^3", "b^2x", "xz^2", "b^2xz", "xz^3"},
       "bx",
       {"1", "z^2", "az"}},
  };
  auto const omega = el("xb");
  std::size_t cases = 0;
  for (auto const& row : published) {
    INFO("U has " << row.u.size() << " heaps starting " << row.u.front());
    auto const s = subsemigroup(qa(), row.u);
    CHECK(std::set<element>(s.begin(), s.end()) == elements_of(row.s_of_u));
    CHECK(phi_of_set(qa(), row.u) == el(row.phi));
    auto const sol = solutions(qa(), omega, row.u);
    CHECK(std::set<element>(sol.begin(), sol.end()) == elements_of(row.sols));
    for (auto x : sol) {
      cases += std::find(s.begin(), s.end(), x) != s.end() ? 1 : 0;
    }
  }
  CHECK(cases == 7);
  CHECK(qa().monoid.mul(el("z^3"), el("bxz")) == el("xb"));
}

TEST_CASE("winning moves for every xb case", "[verifier][published]") {
  struct Row {
    std::vector<heap_size> u;
    char const*            s;
    heap_size              from;
    heap_size              to;
  };
  std::vector<Row> const published{{{9, 10}, "1", 10, 8},     {{4, 9, 10}, "z", 4, 1},
                                   {{8, 9, 10}, "a", 8, 5},   {{4, 8, 9, 10}, "1", 4, 1},
                                   {{4, 8, 9, 10}, "z^2", 4, 1}, {{4, 8, 9, 10}, "az", 4, 1},
                                   {{4, 9, 10}, "z^3", 4, 1}};
  for (auto const& row : published) {
    INFO(row.s << " with " << row.u.size() << " heaps");
    CHECK(qa().monoid.mul(el(row.s), phi_of_set(qa(), row.u)) == el("xb"));
    auto const mv = choose_winning_move(qa(), row.u, el(row.s));
    REQUIRE(mv);
    CHECK(mv->heap == row.from);
    CHECK(mv->t == Position::heap(row.to));
    CHECK(mv->from == el("xb"));
    CHECK(mv->target == el("zb"));
    // every listed move is among the winners
    auto const all = winning_moves(qa(), row.u, el(row.s));
    CHECK(std::any_of(all.begin(), all.end(), [&](WinningMove const& w) {
      return w.heap == row.from && w.t == Position::heap(row.to);
    }));
  }
  CHECK(check_N_to_P(qa(), 12, el("xb")).empty());
  CHECK_THROWS_AS(check_N_to_P(qa(), 12, el("x")), InputError);
}

TEST_CASE("0.123 verification to heap 19 with every engine", "[verifier]") {
  for (auto e : {VerifierEngine::automatic, VerifierEngine::naive, VerifierEngine::heap_class,
                 VerifierEngine::minimal_class, VerifierEngine::closure}) {
    INFO(to_string(e));
    auto const r = verify_to_heap(qa(), 19, with(e));
    CHECK(r.passed);
    CHECK(r.pp_violations.empty());
    CHECK(r.np_failures.empty());
    CHECK(r.terminal_violations.empty());
    CHECK(r.n == 19);
  }
  CHECK(verify_to_heap(qa(), 19).engine == "minimal_class");
  CHECK(parse_engine("heap_class") == VerifierEngine::heap_class);
  CHECK_THROWS_AS(parse_engine("fast"), InputError);
  CHECK_THROWS_AS(verify_to_heap(test_support::q0123(), 13), RangeError);
}

TEST_CASE("certifying the 0.123 period", "[verifier]") {
  auto q = test_support::q0123();
  CHECK_THROWS_AS(certify_period(q, 6, 5), RangeError);  // Phi known only to heap 12
  q = qa();
  auto const r = certify_period(q, 6, 5);
  CHECK(r.passed);
  CHECK(r.n == 19);
  CHECK(q.certified_period == PeriodCertificate{6, 5});
  CHECK(q.verified_to == 19);

  // With a certificate every heap size is covered, and the translate set
  // no longer grows.
  auto const t19 = translate_set(q, 19);
  for (heap_size n = 20; n <= 45; ++n) {
    CHECK(translate_set(q, n) == t19);
  }
  CHECK(predicted_outcome(q, Position{1, 3, 4, 8, 9, 1001}) == Outcome::N);
  CHECK(predicted_outcome(q, Position{1, 3, 4, 8, 9, 1000}) == Outcome::P);

  auto bad = qa();
  bad.phi.values[17] = el("z");
  CHECK_THROWS_AS(certify_period(bad, 6, 5), RangeError);
  CHECK_THROWS_AS(certify_period(bad, 0, 5), InputError);
}

TEST_CASE("corrupted analyses fail verification", "[verifier][mutation]") {
  SECTION("b^2 declared N") {
    auto const r = verify_to_heap(mutated_partition(el("b^2")), 14);
    CHECK_FALSE(r.passed);
    CHECK_FALSE(r.np_failures.empty());
  }
  SECTION("Phi of heaps 8 and 9 swapped") {
    auto m = qa();
    std::swap(m.phi.values[7], m.phi.values[8]);
    auto const r = verify_to_heap(m, 12);
    CHECK_FALSE(r.passed);
  }
  SECTION("every single change to the partition is caught") {
    for (element u = 0; u < qa().monoid.size(); ++u) {
      INFO(qa().monoid.name(u));
      CHECK_FALSE(verify_to_heap(mutated_partition(u), 14).passed);
    }
  }
  SECTION("every single change to Phi is caught") {
    for (heap_size h = 1; h <= 12; ++h) {
      for (element v = 0; v < qa().monoid.size(); ++v) {
        if (v == qa().phi.values[h - 1]) {
          continue;
        }
        auto m              = qa();
        m.phi.values[h - 1] = v;
        INFO("heap " << h << " -> " << qa().monoid.name(v));
        CHECK_FALSE(verify_to_heap(m, 12).passed);
      }
    }
  }
}

TEST_CASE("collapsed engines report what the naive engine reports", "[verifier][property]") {
  std::vector<QuotientAnalysis> cases{qa()};
  for (auto w : {"b^2", "x", "zb", "e", "xzb^2", "za"}) {
    cases.push_back(mutated_partition(el(w)));
  }
  {
    auto m = qa();
    std::swap(m.phi.values[7], m.phi.values[8]);
    cases.push_back(m);
    m                = qa();
    m.phi.values[5]  = el("z^2");
    m.phi.values[10] = el("z^2");
    cases.push_back(m);
  }
  for (std::size_t i = 0; i < cases.size(); ++i) {
    for (heap_size n = 1; n <= 12; ++n) {
      INFO("case " << i << " n " << n);
      auto const naive = verify_to_heap(cases[i], n, with(VerifierEngine::naive));
      auto const hc    = verify_to_heap(cases[i], n, with(VerifierEngine::heap_class));
      auto const mc    = verify_to_heap(cases[i], n, with(VerifierEngine::minimal_class));
      auto const cl    = verify_to_heap(cases[i], n, with(VerifierEngine::closure));
      CHECK(canonical_failures(cases[i], n, naive.np_failures) == hc.np_failures);
      CHECK(canonical_failures(cases[i], n, naive.terminal_violations)
            == canonical_failures(cases[i], n, hc.terminal_violations));
      CHECK(naive.pp_violations == hc.pp_violations);
      CHECK(naive.passed == hc.passed);
      CHECK(naive.passed == mc.passed);
      CHECK(naive.passed == cl.passed);
      // the failing omegas agree across all engines
      auto omegas = [](VerificationReport const& r) {
        std::set<element> s;
        for (auto const& f : r.np_failures) {
          s.insert(f.omega);
        }
        return s;
      };
      CHECK(omegas(naive) == omegas(hc));
      CHECK(omegas(naive) == omegas(mc));
      CHECK(omegas(naive) == omegas(cl));
    }
  }
  // larger bounds, where the naive engine is still affordable
  for (heap_size n : {13, 14}) {
    for (auto const& c : {cases[0], cases[1], cases[7]}) {
      auto const naive = verify_to_heap(c, n, with(VerifierEngine::naive));
      auto const hc    = verify_to_heap(c, n, with(VerifierEngine::heap_class));
      CHECK(canonical_failures(c, n, naive.np_failures) == hc.np_failures);
      CHECK(naive.passed == hc.passed);
    }
  }
}

TEST_CASE("kayles verification to heap 24", "[verifier][kayles]") {
  auto const& k = test_support::kayles();
  for (auto e : {VerifierEngine::minimal_class, VerifierEngine::closure}) {
    INFO(to_string(e));
    auto const r = verify_to_heap(k, 24, with(e));
    CHECK(r.passed);
  }
  auto bad = k;
  bad.p_set[bad.monoid.parse("xvf")] = false;
  CHECK_FALSE(verify_to_heap(bad, 27).passed);
}
