#include "catch_amalgamated.hpp"

#include "grid.hpp"
#include "petri/polygraph2.hpp"
#include "support.hpp"

using namespace petri;

namespace {
  struct Fixture {
    test::Running e;
    TwoPolygraph  g = sigma2(phi(e.net));

    Symbol cell(std::string const& name) const {
      return g.table().cells().at(name);
    }
  };

  Word random_word(test::Rng& rng, std::size_t letters, std::size_t max_len) {
    Word w;
    for (std::size_t k = test::uniform(rng, 0, max_len); k > 0; --k) {
      w.push_back(Symbol(test::uniform(rng, 0, letters - 1)));
    }
    return w;
  }

  // Replays only the swap slices of `a`, as a standalone check.
  Word replay_swaps(TwoPolygraph const& g, SlicedTwoArrow const& a) {
    Word w = a.start;
    for (auto const& s : a.slices) {
      REQUIRE_FALSE(g.rule_of(s.cell).has_value());
      std::size_t p = s.left.size();
      REQUIRE(w[p] == g.table().source(s.cell)[0]);
      REQUIRE(w[p + 1] == g.table().source(s.cell)[1]);
      std::swap(w[p], w[p + 1]);
    }
    return w;
  }
}  // namespace

TEST_CASE("sigma2 cells", "[polygraph2]") {
  Fixture f;
  auto const& t = f.g.table();
  REQUIRE(t.one_cells().size() == 3);
  REQUIRE(t.cells().size() == 8);
  REQUIRE(t.source(f.cell("alpha")) == Word{f.e.x});
  REQUIRE(t.target(f.cell("alpha")) == Word{f.e.y, f.e.z});
  REQUIRE(t.source(f.cell("beta")) == Word{f.e.y, f.e.y});
  REQUIRE(t.target(f.cell("beta")) == Word{f.e.z});
  REQUIRE(t.source(f.cell("tau(z,y)")) == Word{f.e.z, f.e.y});
  REQUIRE(t.target(f.cell("tau(z,y)")) == Word{f.e.y, f.e.z});
  REQUIRE_FALSE(t.cells().contains("tau(x,x)"));

  auto ext = sigma2(phi(f.e.net), true);
  REQUIRE(ext.table().cells().size() == 11);
  REQUIRE(ext.swap(f.e.y, f.e.y).has_value());

  REQUIRE(sigma2(CommRws{}).table().cells().size() == 0);
}

TEST_CASE("repr_bar", "[polygraph2]") {
  test::Running e;
  REQUIRE(repr_bar(e.init()) == Word{e.x, e.x, e.y, e.y});
  REQUIRE(repr_bar({}).empty());
  REQUIRE(repr_bar(e.ms(1, 2, 1)) == Word{e.x, e.y, e.y, e.z});
}

TEST_CASE("lift_permutation", "[polygraph2]") {
  Fixture f;
  auto const& e = f.e;
  auto        a = lift_permutation(f.g, {e.y, e.z, e.y, e.z, e.z}, {e.y, e.y, e.z, e.z, e.z});
  REQUIRE(a.size() == 1);
  REQUIRE(to_string(a.slices[0], f.g.table()) == "y | tau(z,y) | z.z");
  REQUIRE(lift_permutation(f.g, {e.x, e.y}, {e.x, e.y}).size() == 0);
  auto rev = lift_permutation(f.g, {e.x, e.y, e.z}, {e.z, e.y, e.x});
  REQUIRE(rev.size() == 3);
  REQUIRE(target(f.g.table(), rev) == Word{e.z, e.y, e.x});
  REQUIRE_THROWS_AS(lift_permutation(f.g, {e.x}, {e.y}), ParikhMismatch);
}

TEST_CASE("lift_permutation replays on random pairs", "[polygraph2][property]") {
  Fixture   f;
  test::Rng rng(41);
  for (int n = 0; n < 300; ++n) {
    Word u = random_word(rng, 3, 7);
    Word v = u;
    std::shuffle(v.begin(), v.end(), rng);
    auto a = lift_permutation(f.g, u, v);
    REQUIRE(replay_swaps(f.g, a) == v);
    REQUIRE(target(f.g.table(), a) == v);
    std::size_t inversions = 0;
    // Oracle: the bubble decomposition uses exactly the inversion count of
    // the stable matching between u and v.
    std::vector<std::size_t> idx;
    std::vector<bool>        used(u.size(), false);
    for (Symbol s : v) {
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (!used[i] && u[i] == s) {
          used[i] = true;
          idx.push_back(i);
          break;
        }
      }
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        inversions += idx[i] > idx[j];
      }
    }
    REQUIRE(a.size() == inversions);
  }
}

TEST_CASE("pi_path", "[polygraph2]") {
  Fixture f;
  auto const& e = f.e;
  auto const& t = f.g.table();
  SlicedTwoArrow top{{e.x, e.x, e.y, e.y}, {{{e.x, e.x}, f.cell("beta"), {}}}};
  auto           p = pi_path(f.g, top);
  REQUIRE(p == replay(e.net, e.init(), {e.beta}));
  REQUIRE(p.steps[0].context == Multiset::of(e.x, 2));

  auto swaps = lift_permutation(f.g, {e.x, e.y, e.z}, {e.z, e.y, e.x});
  REQUIRE(pi_path(f.g, swaps) == NetPath{e.ms(1, 1, 1), {}});

  // (beta . z^3) o (y . tau(z,y) . z^2) o (alpha . alpha . beta)
  auto composite = parse_arrow("start x.x.y.y\n"
                               "~ | alpha | x.y.y\n"
                               "y.z | alpha | y.y\n"
                               "y.z.y.z | beta | ~\n"
                               "y | tau(z,y) | z.z\n"
                               "~ | beta | z.z.z\n",
                               t);
  REQUIRE(target(t, composite) == Word{e.z, e.z, e.z, e.z});
  auto q = pi_path(f.g, composite);
  REQUIRE(labels(q) == std::vector<Symbol>{e.alpha, e.alpha, e.beta, e.beta});
  REQUIRE(is_valid(e.net, q));
  REQUIRE(target(e.net, q) == Multiset::of(e.z, 4));
}

TEST_CASE("lift_path", "[polygraph2]") {
  Fixture f;
  auto const& e = f.e;
  auto p = replay(e.net, e.init(), {e.beta, e.alpha});
  auto a = lift_path(f.g, p);
  REQUIRE(to_string(a, f.g.table()) == "start x.x.y.y\nx.x | beta | ~\n~ | alpha | x.z\n");
  REQUIRE(pi_path(f.g, a) == p);
  REQUIRE(lift_path(f.g, NetPath{e.init(), {}}) == SlicedTwoArrow{{e.x, e.x, e.y, e.y}, {}});
  for (auto const& arc : reach(e.net, e.init(), {10, 100}).arcs) {
    NetPath one{arc.source, {arc.step}};
    auto    l = lift_path(f.g, one);
    REQUIRE(l.size() == 1);
    REQUIRE(pi_path(f.g, l) == one);
  }
}

TEST_CASE("pi o lift is the identity on random systems", "[polygraph2][property]") {
  test::Rng rng(42);
  for (int n = 0; n < 100; ++n) {
    auto net = test::random_net(rng, 4, 4, 3);
    auto g   = sigma2(phi(net));
    auto m0  = test::random_multiset(rng, net.places().size(), 4);
    auto p   = test::random_path(rng, net, m0, 5);
    auto a   = lift_path(g, p);
    REQUIRE(a.start == repr_bar(m0));
    REQUIRE(pi_path(g, a) == p);
  }
}

TEST_CASE("exchange of independent slices", "[polygraph2]") {
  Fixture f;
  auto const& e = f.e;
  auto const& t = f.g.table();
  auto        a = parse_arrow("~ | alpha | y.y.y\ny.z | beta | y\n", t);
  auto        b = parse_arrow("x | beta | y\n~ | alpha | z.y\n", t);
  REQUIRE(a.start == Word{e.x, e.y, e.y, e.y});
  REQUIRE(exchange_at(t, a, 0) == b);
  REQUIRE(exchange_at(t, b, 0) == a);
  auto cls = exchange_class(t, a, 10);
  REQUIRE(cls == std::set<SlicedTwoArrow>{a, b});
  REQUIRE(exchange_equivalent(t, a, b, 10));

  auto single = parse_arrow("x | beta | y\n", t);
  REQUIRE(exchange_class(t, single, 1).size() == 1);

  // Overlapping cells never exchange.
  auto dep = parse_arrow("~ | alpha | x\ny.z | alpha | ~\ny | tau(z,y) | z\n", t);
  REQUIRE_FALSE(exchange_at(t, dep, 1).has_value());
}

TEST_CASE("the lifted grid is one exchange class", "[polygraph2]") {
  test::Running e;
  test::Grid    grid(e);
  auto const&   t = grid.g.table();
  REQUIRE(grid.maximal_paths.size() == 5);
  for (auto const& p : grid.maximal_paths) {
    REQUIRE(target(t, p) == Word{e.z, e.z, e.z, e.z});
  }
  auto cls = exchange_class(t, grid.maximal_paths[0], 100000);
  for (auto const& p : grid.maximal_paths) {
    REQUIRE(cls.count(p) == 1);
  }
  for (auto const& q : cls) {
    REQUIRE(pi_path(grid.g, q).size() == 4);
    REQUIRE(equivalent(e.net, pi_path(grid.g, q), pi_path(grid.g, grid.maximal_paths[0]), 100));
  }
}

TEST_CASE("exchange preserves boundaries and projections", "[polygraph2][property]") {
  test::Rng rng(43);
  for (int n = 0; n < 60; ++n) {
    auto net = test::random_net(rng, 3, 3, 2);
    auto g   = sigma2(phi(net));
    auto m0  = test::random_multiset(rng, net.places().size(), 4);
    auto a   = lift_path(g, test::random_path(rng, net, m0, 4));
    auto cls = exchange_class(g.table(), a, 100000);
    for (auto const& b : cls) {
      REQUIRE(b.start == a.start);
      REQUIRE(target(g.table(), b) == target(g.table(), a));
      REQUIRE(b.size() == a.size());
      REQUIRE(equivalent(net, pi_path(g, a), pi_path(g, b), 100000));
    }
  }
}

TEST_CASE("relation families are sound under projection", "[polygraph2]") {
  test::Running e;
  auto          g   = sigma2(phi(e.net), true);
  auto          rel = relation_instances(g);
  std::map<Family, std::size_t> count;
  for (auto const& r : rel) {
    ++count[r.family];
    REQUIRE(well_formed(g.table(), r.lhs));
    REQUIRE(well_formed(g.table(), r.rhs));
    REQUIRE(lemma_relations_sound(g, r));
    for (Word u : {Word{}, Word{e.x}, Word{e.z, e.y}}) {
      REQUIRE(lemma_relations_sound(g, whisker(r, u, {e.y})));
    }
  }
  REQUIRE(count[Family::self_swap] == 3);
  REQUIRE(count[Family::involution] == 9);
  REQUIRE(count[Family::yang_baxter] == 27);
  REQUIRE(count[Family::naturality] == 12);

  auto const& t  = g.table();
  auto        aa = relation_instances(g)[0];
  REQUIRE(to_string(aa.lhs, t) == "start x.x\n~ | tau(x,x) | ~\n");
  REQUIRE(pi_path(g, aa.lhs) == NetPath{Multiset::of(e.x, 2), {}});
}

TEST_CASE("a mismatched pair is rejected", "[polygraph2]") {
  Fixture f;
  auto const& t = f.g.table();
  RelationInstance bad{Family::naturality,
                       parse_arrow("~ | alpha | x\n", t),
                       parse_arrow("x | alpha | ~\n~ | tau(x,y) | z\n", t)};
  REQUIRE_FALSE(lemma_relations_sound(f.g, bad));
}
