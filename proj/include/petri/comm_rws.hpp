// Commutative word rewriting systems and their identification with Petri
// nets.

#ifndef PETRI_COMM_RWS_HPP_
#define PETRI_COMM_RWS_HPP_

#include <deque>
#include <set>
#include <string>
#include <vector>

#include "petri_core.hpp"

namespace petri {

  struct UnknownRule : error {
    Symbol rule;
    explicit UnknownRule(Symbol r)
        : error("unknown rule #" + std::to_string(r.id)), rule(r) {}
  };

  class CommRws {
   public:
    struct Rule {
      Multiset    source;
      Multiset    target;
      friend bool operator==(Rule const&, Rule const&) = default;
    };

    CommRws() = default;

    Symbol add_symbol(std::string const& name) {
      if (_rule_names.contains(name)) {
        throw DuplicateName(name);
      }
      return _alphabet.add(name);
    }

    Symbol add_rule(std::string const& name, Multiset source, Multiset target) {
      if (_alphabet.contains(name)) {
        throw DuplicateName(name);
      }
      for (auto const* m : {&source, &target}) {
        for (auto const& [s, k] : *m) {
          if (!_alphabet.valid(s)) {
            throw UnknownSymbol("#" + std::to_string(s.id));
          }
        }
      }
      Symbol r = _rule_names.add(name);
      _rules.push_back({std::move(source), std::move(target)});
      return r;
    }

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }
    Alphabet const& rule_names() const noexcept {
      return _rule_names;
    }
    std::size_t size() const noexcept {
      return _rules.size();
    }

    Rule const& rule(Symbol r) const {
      if (!_rule_names.valid(r)) {
        throw UnknownRule(r);
      }
      return _rules[r.id];
    }

    friend bool operator==(CommRws const&, CommRws const&) = default;

   private:
    Alphabet          _alphabet;
    Alphabet          _rule_names;
    std::vector<Rule> _rules;
  };

  inline CommRws phi(PetriNet const& net) {
    CommRws rws;
    for (auto const& n : net.places().names()) {
      rws.add_symbol(n);
    }
    for (std::size_t i = 0; i < net.transitions().size(); ++i) {
      Symbol t(i);
      rws.add_rule(net.transitions().name(t), net.pre(t), net.post(t));
    }
    return rws;
  }

  inline PetriNet psi(CommRws const& rws) {
    PetriNet net;
    for (auto const& n : rws.alphabet().names()) {
      net.add_place(n);
    }
    for (std::size_t i = 0; i < rws.size(); ++i) {
      Symbol r(i);
      net.add_transition(
          rws.rule_names().name(r), rws.rule(r).source, rws.rule(r).target);
    }
    return net;
  }

  inline ReductionStep apply_rule(CommRws const& rws, Multiset const& c, Symbol r) {
    rws.rule(r);
    return {c, r};
  }

  inline Multiset source(CommRws const& rws, ReductionStep const& s) {
    return s.context + rws.rule(s.rule).source;
  }

  inline Multiset target(CommRws const& rws, ReductionStep const& s) {
    return s.context + rws.rule(s.rule).target;
  }

  // Reduction graph of a rewriting system, computed from its own definition:
  // an arrow c + r leaves a whenever a decomposes as c + s(r).
  inline ReductionGraph rws_reach(CommRws const& rws, Multiset const& a0, Limits lim) {
    ReductionGraph                               g;
    std::set<Multiset>                           seen{a0};
    std::deque<std::pair<Multiset, std::size_t>> queue{{a0, 0}};
    while (!queue.empty()) {
      auto [a, depth] = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < rws.size(); ++i) {
        Symbol      r(i);
        auto const& rule = rws.rule(r);
        if (!ms_leq(rule.source, a)) {
          continue;
        }
        if (depth == lim.max_depth) {
          g.truncated = true;
          break;
        }
        ReductionStep step = apply_rule(rws, a - rule.source, r);
        Multiset      b    = target(rws, step);
        if (seen.count(b) == 0) {
          if (seen.size() >= lim.max_states) {
            g.truncated = true;
            continue;
          }
          seen.insert(b);
          queue.emplace_back(b, depth + 1);
        }
        g.arcs.push_back({a, step});
      }
    }
    g.nodes.assign(seen.begin(), seen.end());
    std::sort(g.arcs.begin(), g.arcs.end(), [](auto const& x, auto const& y) {
      return std::tie(x.source, x.step.rule) < std::tie(y.source, y.step.rule);
    });
    return g;
  }

  struct IsoReport {
    std::size_t              nodes   = 0;
    std::size_t              arcs    = 0;
    std::size_t              squares = 0;
    std::vector<std::string> mismatches;

    bool ok() const noexcept {
      return mismatches.empty();
    }
  };

  // Compares the bounded graphs of net and phi(net) from m0: the marking
  // correspondence sum mu(x).x must be a bijection on nodes and arcs, and every
  // independence square of the net must be the rewriting square on the same
  // context.
  inline IsoReport iso_check(PetriNet const& net, Multiset const& m0, Limits lim) {
    IsoReport r;
    CommRws   rws = phi(net);
    auto      gn  = reach(net, m0, lim);
    auto      gr  = rws_reach(rws, m0, lim);
    auto      to_multiset = [&](Multiset const& mu) {
      Multiset a;
      for (std::size_t i = 0; i < net.places().size(); ++i) {
        a.add(Symbol(i), mu.count(Symbol(i)));
      }
      return a;
    };
    auto show = [&](Multiset const& m) { return to_string(m, net.places()); };

    r.nodes = gn.nodes.size();
    r.arcs  = gn.arcs.size();
    if (gn.nodes.size() != gr.nodes.size()) {
      r.mismatches.push_back("node counts differ");
    }
    for (auto const& mu : gn.nodes) {
      if (!gr.contains(to_multiset(mu))) {
        r.mismatches.push_back("node " + show(mu) + " has no image");
      }
    }
    std::set<std::pair<Multiset, ReductionStep>> rarcs;
    for (auto const& a : gr.arcs) {
      rarcs.emplace(a.source, a.step);
    }
    if (gn.arcs.size() != gr.arcs.size()) {
      r.mismatches.push_back("arc counts differ");
    }
    for (auto const& a : gn.arcs) {
      ReductionStep img{to_multiset(a.step.context), a.step.rule};
      if (rarcs.count({to_multiset(a.source), img}) == 0) {
        r.mismatches.push_back("arc " + show(a.source) + " -> "
                               + net.transitions().name(a.step.rule)
                               + " has no image");
      }
    }
    std::size_t const n = net.transitions().size();
    for (auto const& mu : gn.nodes) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          Symbol a(i), b(j);
          if (!ms_leq(net.pre(a) + net.pre(b), mu)) {
            continue;
          }
          ++r.squares;
          NetPath left = replay(net, mu, {a, b});
          auto    right = swap_at(net, left, 0);
          Multiset c     = to_multiset(mu) - rws.rule(a).source - rws.rule(b).source;
          NetPath  rleft{to_multiset(mu),
                        {apply_rule(rws, c + rws.rule(b).source, a),
                         apply_rule(rws, c + rws.rule(a).target, b)}};
          NetPath  rright{to_multiset(mu),
                         {apply_rule(rws, c + rws.rule(a).source, b),
                          apply_rule(rws, c + rws.rule(b).target, a)}};
          if (!right || left != rleft || *right != rright) {
            r.mismatches.push_back("square at " + show(mu) + " for "
                                   + net.transitions().name(a) + ","
                                   + net.transitions().name(b));
          }
        }
      }
    }
    return r;
  }

}  // namespace petri

#endif  // PETRI_COMM_RWS_HPP_
