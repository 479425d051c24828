#include <algorithm>

#include "catch_amalgamated.hpp"

#include "petri/petri_core.hpp"
#include "support.hpp"

using namespace petri;

namespace {
  // Independent firability check used as an oracle: plain count arithmetic,
  // no library firing code.
  bool firable(test::Running const& e, std::vector<Symbol> const& seq) {
    long x = 2, y = 2, z = 0;
    for (Symbol t : seq) {
      if (t == e.alpha) {
        if (x < 1) {
          return false;
        }
        x -= 1, y += 1, z += 1;
      } else {
        if (y < 2) {
          return false;
        }
        y -= 2, z += 1;
      }
    }
    return true;
  }
}  // namespace

TEST_CASE("enabled", "[petri_core]") {
  test::Running e;
  REQUIRE(enabled(e.net, e.init(), e.beta));
  REQUIRE_FALSE(enabled(e.net, e.ms(2, 0, 1), e.beta));
  REQUIRE_FALSE(enabled(e.net, {}, e.alpha));
  REQUIRE_THROWS_AS(enabled(e.net, {}, Symbol(7)), UnknownTransition);
}

TEST_CASE("fire", "[petri_core]") {
  test::Running e;
  auto [m1, s1] = fire(e.net, e.init(), e.alpha);
  REQUIRE(m1 == e.ms(1, 3, 1));
  REQUIRE(s1.context == e.ms(1, 2, 0));
  auto [m2, s2] = fire(e.net, e.ms(0, 2, 3), e.beta);
  REQUIRE(m2 == e.ms(0, 0, 4));
  REQUIRE(s2.context == e.ms(0, 0, 3));
  try {
    fire(e.net, e.ms(1, 1, 2), e.beta);
    FAIL("expected NotEnabled");
  } catch (NotEnabled const& err) {
    REQUIRE(err.transition == e.beta);
    REQUIRE(err.missing == Multiset::of(e.y));
  }
}

TEST_CASE("reachability of the running example", "[petri_core]") {
  test::Running e;
  auto          g = reach(e.net, e.init(), {10, 100});
  std::vector<Multiset> expected{e.ms(2, 2, 0),
                                 e.ms(2, 0, 1),
                                 e.ms(1, 3, 1),
                                 e.ms(1, 1, 2),
                                 e.ms(0, 4, 2),
                                 e.ms(0, 2, 3),
                                 e.ms(0, 0, 4)};
  std::sort(expected.begin(), expected.end());
  REQUIRE(g.nodes == expected);
  REQUIRE(g.arcs.size() == 8);
  REQUIRE_FALSE(g.truncated);
  std::vector<std::pair<Multiset, Multiset>> arcs;
  for (auto const& a : g.arcs) {
    REQUIRE(source(e.net, a.step) == a.source);
    arcs.emplace_back(a.source, target(e.net, a.step));
  }
  std::vector<std::pair<Multiset, Multiset>> want{
      {e.ms(2, 2, 0), e.ms(1, 3, 1)},
      {e.ms(2, 2, 0), e.ms(2, 0, 1)},
      {e.ms(2, 0, 1), e.ms(1, 1, 2)},
      {e.ms(1, 3, 1), e.ms(0, 4, 2)},
      {e.ms(1, 3, 1), e.ms(1, 1, 2)},
      {e.ms(1, 1, 2), e.ms(0, 2, 3)},
      {e.ms(0, 4, 2), e.ms(0, 2, 3)},
      {e.ms(0, 2, 3), e.ms(0, 0, 4)}};
  std::sort(arcs.begin(), arcs.end());
  std::sort(want.begin(), want.end());
  REQUIRE(arcs == want);
}

TEST_CASE("reach edge cases", "[petri_core]") {
  PetriNet empty;
  Symbol   p = empty.add_place("p");
  auto     g = reach(empty, Multiset::of(p, 3), {5, 5});
  REQUIRE(g.nodes.size() == 1);
  REQUIRE(g.arcs.empty());
  REQUIRE_FALSE(g.truncated);

  PetriNet gen;
  Symbol   z = gen.add_place("z");
  gen.add_transition("make", {}, Multiset::of(z));
  auto g2 = reach(gen, {}, {3, 100});
  REQUIRE(g2.nodes
          == std::vector<Multiset>{
              {}, Multiset::of(z), Multiset::of(z, 2), Multiset::of(z, 3)});
  REQUIRE(g2.truncated);
  auto g3 = reach(gen, {}, {100, 4});
  REQUIRE(g3.nodes.size() == 4);
  REQUIRE(g3.truncated);
}

TEST_CASE("swap_at", "[petri_core]") {
  test::Running e;
  auto          p = replay(e.net, e.init(), {e.alpha, e.beta});
  auto          q = swap_at(e.net, p, 0);
  REQUIRE(q.has_value());
  REQUIRE(*q == replay(e.net, e.init(), {e.beta, e.alpha}));
  REQUIRE(source(e.net, q->steps[1]) == e.ms(2, 0, 1));
  REQUIRE(swap_at(e.net, *q, 0) == p);

  auto stuck = replay(e.net, e.ms(1, 1, 2), {e.alpha, e.beta});
  REQUIRE_FALSE(swap_at(e.net, stuck, 0).has_value());

  auto same = replay(e.net, e.init(), {e.alpha, e.alpha});
  REQUIRE(swap_at(e.net, same, 0) == same);
  REQUIRE_THROWS_AS(swap_at(e.net, same, 1), IndexOutOfRange);
}

TEST_CASE("class of the alpha alpha beta beta path", "[petri_core]") {
  test::Running e;
  // Oracle: every ordering of {alpha, alpha, beta, beta}, kept if firable.
  std::vector<Symbol>              seq{e.alpha, e.alpha, e.beta, e.beta};
  std::set<std::vector<Symbol>> firables;
  std::sort(seq.begin(), seq.end());
  do {
    if (firable(e, seq)) {
      firables.insert(seq);
    }
  } while (std::next_permutation(seq.begin(), seq.end()));
  REQUIRE(firables.size() == 3);

  auto p   = replay(e.net, e.init(), {e.alpha, e.alpha, e.beta, e.beta});
  auto cls = equiv_class(e.net, p, 100);
  std::set<std::vector<Symbol>> got;
  for (auto const& q : cls) {
    got.insert(labels(q));
    REQUIRE(q.start == p.start);
    REQUIRE(target(e.net, q) == e.ms(0, 0, 4));
  }
  REQUIRE(got == firables);
  REQUIRE(cls.size() == 3);
  REQUIRE_THROWS_AS(equiv_class(e.net, p, 2), CapExceeded);
}

TEST_CASE("trivial classes", "[petri_core]") {
  test::Running e;
  NetPath       empty{e.init(), {}};
  REQUIRE(equiv_class(e.net, empty, 1) == std::set<NetPath>{empty});
  auto one = replay(e.net, e.init(), {e.beta});
  REQUIRE(equiv_class(e.net, one, 1) == std::set<NetPath>{one});
}

TEST_CASE("equivalent", "[petri_core]") {
  test::Running e;
  auto ab = replay(e.net, e.init(), {e.alpha, e.beta});
  auto ba = replay(e.net, e.init(), {e.beta, e.alpha});
  REQUIRE(equivalent(e.net, ab, ba, 10));
  REQUIRE(equivalent(e.net, ab, ab, 10));
  auto aabb = replay(e.net, e.init(), {e.alpha, e.alpha, e.beta, e.beta});
  REQUIRE_THROWS_AS(replay(e.net, e.init(), {e.alpha, e.beta, e.beta, e.alpha}),
                    NotEnabled);
  auto aab = replay(e.net, e.init(), {e.alpha, e.alpha, e.beta});
  REQUIRE_FALSE(equivalent(e.net, aabb, aab, 10));
}

TEST_CASE("firing and state equations on random nets", "[petri_core][property]") {
  test::Rng rng(21);
  for (int n = 0; n < 100; ++n) {
    auto net = test::random_net(rng, 4, 4, 3);
    auto m0  = test::random_multiset(rng, net.places().size(), 4);
    auto p   = test::random_path(rng, net, m0, 6);
    REQUIRE(is_valid(net, p));
    Multiset lhs = target(net, p), rhs = m0;
    for (auto const& s : p.steps) {
      lhs = lhs + net.pre(s.rule);
      rhs = rhs + net.post(s.rule);
      auto [nu, step] = fire(net, source(net, s), s.rule);
      REQUIRE(nu + net.pre(s.rule) == source(net, s) + net.post(s.rule));
    }
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("swap properties on random nets", "[petri_core][property]") {
  test::Rng rng(22);
  for (int n = 0; n < 100; ++n) {
    auto net = test::random_net(rng, 3, 3, 2);
    auto m0  = test::random_multiset(rng, net.places().size(), 4);
    auto p   = test::random_path(rng, net, m0, 5);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      auto q = swap_at(net, p, i);
      if (!q) {
        continue;
      }
      REQUIRE(is_valid(net, *q));
      REQUIRE(q->start == p.start);
      REQUIRE(target(net, *q) == target(net, p));
      auto lp = labels(p), lq = labels(*q);
      std::sort(lp.begin(), lp.end());
      std::sort(lq.begin(), lq.end());
      REQUIRE(lp == lq);
      REQUIRE(swap_at(net, *q, i) == p);
    }
    auto cls = equiv_class(net, p, 10000);
    for (auto const& q : cls) {
      REQUIRE(equivalent(net, q, p, 10000));
      REQUIRE(equivalent(net, p, q, 10000));
    }
  }
}

TEST_CASE("reach is monotone in its limits", "[petri_core][property]") {
  test::Rng rng(23);
  for (int n = 0; n < 60; ++n) {
    auto net = test::random_net(rng, 3, 3, 2);
    auto m0  = test::random_multiset(rng, net.places().size(), 3);
    auto small = reach(net, m0, {2, 20});
    auto large = reach(net, m0, {4, 200});
    for (auto const& m : small.nodes) {
      REQUIRE(large.contains(m));
    }
    for (auto const& a : small.arcs) {
      REQUIRE(std::find(large.arcs.begin(), large.arcs.end(), a) != large.arcs.end());
    }
  }
}

TEST_CASE("paths_up_to", "[petri_core]") {
  test::Running e;
  auto          ps = paths_up_to(e.net, e.init(), 4);
  // Oracle: words over {alpha, beta} of length <= 4 that replay from init.
  std::size_t expected = 0;
  for (std::size_t len = 0; len <= 4; ++len) {
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      std::vector<Symbol> seq;
      for (std::size_t i = 0; i < len; ++i) {
        seq.push_back((bits >> i) & 1 ? e.beta : e.alpha);
      }
      try {
        auto p = replay(e.net, e.init(), seq);
        ++expected;
        REQUIRE(std::find(ps.begin(), ps.end(), p) != ps.end());
      } catch (NotEnabled const&) {
      }
    }
  }
  REQUIRE(ps.size() == expected);
  REQUIRE(ps.front() == NetPath{e.init(), {}});
  for (auto const& p : ps) {
    REQUIRE(is_valid(e.net, p));
  }
  REQUIRE(paths_up_to(e.net, e.init(), 0).size() == 1);
}
