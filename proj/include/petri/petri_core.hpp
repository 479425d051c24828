// Petri nets, firing, bounded reduction graphs and the path congruence
// generated by swapping independent firings.

#ifndef PETRI_PETRI_CORE_HPP_
#define PETRI_PETRI_CORE_HPP_

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "algebra.hpp"

namespace petri {

  struct UnknownTransition : error {
    Symbol transition;
    explicit UnknownTransition(Symbol t)
        : error("unknown transition #" + std::to_string(t.id)), transition(t) {}
  };

  struct NotEnabled : error {
    Symbol   transition;
    Multiset missing;
    NotEnabled(Symbol t, Multiset m, std::string const& what)
        : error(what), transition(t), missing(std::move(m)) {}
  };

  struct IndexOutOfRange : error {
    IndexOutOfRange() : error("step index out of range") {}
  };

  struct CapExceeded : error {
    CapExceeded() : error("equivalence class exceeds cap") {}
  };

  struct InvalidPath : error {
    using error::error;
  };

  class PetriNet {
   public:
    struct Arcs {
      Multiset pre;
      Multiset post;
      friend bool operator==(Arcs const&, Arcs const&) = default;
    };

    PetriNet() = default;

    Symbol add_place(std::string const& name) {
      if (_transitions.contains(name)) {
        throw DuplicateName(name);
      }
      return _places.add(name);
    }

    Symbol add_transition(std::string const& name, Multiset pre, Multiset post) {
      if (_places.contains(name)) {
        throw DuplicateName(name);
      }
      for (auto const* m : {&pre, &post}) {
        for (auto const& [s, k] : *m) {
          if (!_places.valid(s)) {
            throw UnknownSymbol("#" + std::to_string(s.id));
          }
        }
      }
      Symbol t = _transitions.add(name);
      _arcs.push_back({std::move(pre), std::move(post)});
      return t;
    }

    Alphabet const& places() const noexcept {
      return _places;
    }
    Alphabet const& transitions() const noexcept {
      return _transitions;
    }

    Arcs const& arcs(Symbol t) const {
      if (!_transitions.valid(t)) {
        throw UnknownTransition(t);
      }
      return _arcs[t.id];
    }
    Multiset const& pre(Symbol t) const {
      return arcs(t).pre;
    }
    Multiset const& post(Symbol t) const {
      return arcs(t).post;
    }

    friend bool operator==(PetriNet const&, PetriNet const&) = default;

   private:
    Alphabet          _places;
    Alphabet          _transitions;
    std::vector<Arcs> _arcs;
  };

  // The arrow c + t of the reduction graph.
  struct ReductionStep {
    Multiset context;
    Symbol   rule;

    friend bool operator==(ReductionStep const&, ReductionStep const&) = default;
    friend bool operator<(ReductionStep const& a, ReductionStep const& b) {
      return std::tie(a.context, a.rule) < std::tie(b.context, b.rule);
    }
  };

  inline Multiset source(PetriNet const& net, ReductionStep const& s) {
    return s.context + net.pre(s.rule);
  }

  inline Multiset target(PetriNet const& net, ReductionStep const& s) {
    return s.context + net.post(s.rule);
  }

  struct NetPath {
    Multiset                   start;
    std::vector<ReductionStep> steps;

    std::size_t size() const noexcept {
      return steps.size();
    }

    friend bool operator==(NetPath const&, NetPath const&) = default;
    friend bool operator<(NetPath const& a, NetPath const& b) {
      return std::tie(a.start, a.steps) < std::tie(b.start, b.steps);
    }
  };

  inline Multiset target(PetriNet const& net, NetPath const& p) {
    return p.steps.empty() ? p.start : target(net, p.steps.back());
  }

  inline bool is_valid(PetriNet const& net, NetPath const& p) {
    Multiset m = p.start;
    for (auto const& s : p.steps) {
      if (!net.transitions().valid(s.rule) || source(net, s) != m) {
        return false;
      }
      m = target(net, s);
    }
    return true;
  }

  inline std::vector<Symbol> labels(NetPath const& p) {
    std::vector<Symbol> out;
    for (auto const& s : p.steps) {
      out.push_back(s.rule);
    }
    return out;
  }

  inline bool enabled(PetriNet const& net, Multiset const& m, Symbol t) {
    return ms_leq(net.pre(t), m);
  }

  inline std::pair<Multiset, ReductionStep> fire(PetriNet const&  net,
                                                 Multiset const& m,
                                                 Symbol          t) {
    auto const& pre = net.pre(t);
    if (!ms_leq(pre, m)) {
      Multiset missing;
      for (auto const& [s, k] : pre) {
        if (m.count(s) < k) {
          missing.add(s, k - m.count(s));
        }
      }
      throw NotEnabled(t,
                       missing,
                       "transition " + net.transitions().name(t)
                           + " not enabled, missing "
                           + to_string(missing, net.places()));
    }
    ReductionStep step{m - pre, t};
    return {step.context + net.post(t), std::move(step)};
  }

  // Replays a transition sequence from m, inferring the contexts.
  inline NetPath replay(PetriNet const&            net,
                        Multiset const&            m,
                        std::vector<Symbol> const& seq) {
    NetPath  p{m, {}};
    Multiset cur = m;
    for (Symbol t : seq) {
      auto [next, step] = fire(net, cur, t);
      p.steps.push_back(std::move(step));
      cur = std::move(next);
    }
    return p;
  }

  // Every firable path of length at most max_len from m, shortest first,
  // then in transition order.
  inline std::vector<NetPath> paths_up_to(PetriNet const& net, Multiset const& m, std::size_t max_len) {
    std::vector<NetPath> out{{m, {}}};
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].size() == max_len) {
        continue;
      }
      Multiset cur = target(net, out[i]);
      for (std::size_t t = 0; t < net.transitions().size(); ++t) {
        if (enabled(net, cur, Symbol(t))) {
          NetPath q = out[i];
          q.steps.push_back(fire(net, cur, Symbol(t)).second);
          out.push_back(std::move(q));
        }
      }
    }
    return out;
  }

  struct Limits {
    std::size_t max_depth  = 16;
    std::size_t max_states = 10000;
  };

  struct ReductionGraph {
    struct Arc {
      Multiset      source;
      ReductionStep step;
      friend bool   operator==(Arc const&, Arc const&) = default;
    };
    std::vector<Multiset> nodes;
    std::vector<Arc>      arcs;
    bool                  truncated = false;

    bool contains(Multiset const& m) const {
      return std::binary_search(nodes.begin(), nodes.end(), m);
    }
  };

  // Breadth-first exploration.  Arcs leading to markings that could not be
  // admitted under the state limit are dropped and the truncated flag is set.
  inline ReductionGraph reach(PetriNet const& net, Multiset const& m0, Limits lim) {
    ReductionGraph                              g;
    std::set<Multiset>                          seen{m0};
    std::deque<std::pair<Multiset, std::size_t>> queue{{m0, 0}};
    std::size_t const                           n = net.transitions().size();
    if (lim.max_states == 0) {
      g.truncated = true;
      return g;
    }
    while (!queue.empty()) {
      auto [m, depth] = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < n; ++i) {
        Symbol t(i);
        if (!enabled(net, m, t)) {
          continue;
        }
        if (depth == lim.max_depth) {
          g.truncated = true;
          break;
        }
        auto [next, step] = fire(net, m, t);
        if (seen.count(next) == 0) {
          if (seen.size() >= lim.max_states) {
            g.truncated = true;
            continue;
          }
          seen.insert(next);
          queue.emplace_back(next, depth + 1);
        }
        g.arcs.push_back({m, std::move(step)});
      }
    }
    g.nodes.assign(seen.begin(), seen.end());
    std::sort(g.arcs.begin(), g.arcs.end(), [](auto const& a, auto const& b) {
      return std::tie(a.source, a.step.rule) < std::tie(b.source, b.step.rule);
    });
    return g;
  }

  // Replaces steps i, i+1 (firing a then b) by the other side of the
  // independence square, when a and b are jointly enabled at the source.
  inline std::optional<NetPath> swap_at(PetriNet const& net,
                                        NetPath const&  p,
                                        std::size_t     i) {
    if (i + 1 >= p.steps.size()) {
      throw IndexOutOfRange();
    }
    Symbol const a    = p.steps[i].rule;
    Symbol const b    = p.steps[i + 1].rule;
    Multiset     mu   = source(net, p.steps[i]);
    Multiset     both = net.pre(a) + net.pre(b);
    if (!ms_leq(both, mu)) {
      return std::nullopt;
    }
    Multiset rho = mu - both;
    NetPath  q   = p;
    q.steps[i]     = {rho + net.pre(a), b};
    q.steps[i + 1] = {rho + net.post(b), a};
    return q;
  }

  namespace detail {
    // Breadth-first closure under swap_at.  Stops early when `stop` holds for
    // a newly reached path.
    template <typename Stop>
    std::set<NetPath> swap_closure(PetriNet const& net,
                                   NetPath const&  p,
                                   std::size_t     cap,
                                   Stop&&          stop) {
      std::set<NetPath>   seen{p};
      std::deque<NetPath> queue{p};
      if (stop(p)) {
        return seen;
      }
      if (seen.size() > cap) {
        throw CapExceeded();
      }
      while (!queue.empty()) {
        NetPath cur = std::move(queue.front());
        queue.pop_front();
        for (std::size_t i = 0; i + 1 < cur.steps.size(); ++i) {
          auto q = swap_at(net, cur, i);
          if (!q || seen.count(*q) != 0) {
            continue;
          }
          seen.insert(*q);
          if (seen.size() > cap) {
            throw CapExceeded();
          }
          if (stop(*q)) {
            return seen;
          }
          queue.push_back(std::move(*q));
        }
      }
      return seen;
    }
  }  // namespace detail

  inline std::set<NetPath> equiv_class(PetriNet const& net,
                                       NetPath const&  p,
                                       std::size_t     cap) {
    return detail::swap_closure(net, p, cap, [](NetPath const&) { return false; });
  }

  inline bool equivalent(PetriNet const& net,
                         NetPath const&  p,
                         NetPath const&  q,
                         std::size_t     cap) {
    if (p.start != q.start || p.size() != q.size()
        || target(net, p) != target(net, q)) {
      return false;
    }
    bool found = false;
    detail::swap_closure(net, p, cap, [&](NetPath const& r) {
      found = (r == q);
      return found;
    });
    return found;
  }

}  // namespace petri

#endif  // PETRI_PETRI_CORE_HPP_
