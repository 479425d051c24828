// Shared fixtures and random generators for the test suites.

#ifndef PETRI_TESTS_SUPPORT_HPP_
#define PETRI_TESTS_SUPPORT_HPP_

#include <random>
#include <string>
#include <vector>

#include "petri/comm_rws.hpp"

namespace petri::test {

  // Places x < y < z, alpha: x -> y+z, beta: 2y -> z.
  struct Running {
    PetriNet net;
    Symbol   x, y, z, alpha, beta;

    Running() {
      x     = net.add_place("x");
      y     = net.add_place("y");
      z     = net.add_place("z");
      alpha = net.add_transition("alpha", {{x, 1}}, {{y, 1}, {z, 1}});
      beta  = net.add_transition("beta", {{y, 2}}, {{z, 1}});
    }

    Multiset ms(count_type a, count_type b, count_type c) const {
      return {{x, a}, {y, b}, {z, c}};
    }

    Multiset init() const {
      return ms(2, 2, 0);
    }
  };

  using Rng = std::mt19937_64;

  inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }

  inline Multiset random_multiset(Rng& rng, std::size_t places, count_type max_count) {
    Multiset m;
    for (std::size_t i = 0; i < places; ++i) {
      m.add(Symbol(i), uniform(rng, 0, max_count));
    }
    return m;
  }

  // At most `max_places` places and `max_trans` transitions, weights <= w.
  inline PetriNet random_net(Rng&        rng,
                             std::size_t max_places,
                             std::size_t max_trans,
                             count_type  w) {
    PetriNet    net;
    std::size_t np = uniform(rng, 1, max_places);
    std::size_t nt = uniform(rng, 0, max_trans);
    for (std::size_t i = 0; i < np; ++i) {
      net.add_place("p" + std::to_string(i));
    }
    for (std::size_t i = 0; i < nt; ++i) {
      net.add_transition("t" + std::to_string(i),
                         random_multiset(rng, np, w),
                         random_multiset(rng, np, w));
    }
    return net;
  }

  // A random firable path of length <= max_len from m.
  inline NetPath random_path(Rng& rng, PetriNet const& net, Multiset const& m, std::size_t max_len) {
    NetPath     p{m, {}};
    Multiset    cur = m;
    std::size_t len = uniform(rng, 0, max_len);
    for (std::size_t k = 0; k < len; ++k) {
      std::vector<Symbol> en;
      for (std::size_t i = 0; i < net.transitions().size(); ++i) {
        if (enabled(net, cur, Symbol(i))) {
          en.push_back(Symbol(i));
        }
      }
      if (en.empty()) {
        break;
      }
      auto [next, step] = fire(net, cur, en[uniform(rng, 0, en.size() - 1)]);
      p.steps.push_back(step);
      cur = next;
    }
    return p;
  }

}  // namespace petri::test

#endif  // PETRI_TESTS_SUPPORT_HPP_
