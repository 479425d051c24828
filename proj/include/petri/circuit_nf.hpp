// Circuits with explicit permutations, duplications and single-output split
// cells; the translation of rule cells into such circuits; normal forms and
// critical pairs.

#ifndef PETRI_CIRCUIT_NF_HPP_
#define PETRI_CIRCUIT_NF_HPP_

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polygraph2.hpp"

namespace petri {

  struct InvalidSystem : error {
    using error::error;
  };

  struct FuelExhausted : error {
    FuelExhausted() : error("normalization ran out of fuel") {}
  };

  enum class BarKind { swap, dup, split };

  class BarPolygraph {
   public:
    struct Info {
      BarKind     kind;
      Symbol      rule;   // split cells
      std::size_t index;  // split cells, 1-based output index
    };

    BarPolygraph() = default;

    // Rules must have at least one output, and rules without input exactly
    // one.
    explicit BarPolygraph(CommRws rws) : _rws(std::move(rws)) {
      auto const& a = _rws.alphabet();
      for (std::size_t r = 0; r < _rws.size(); ++r) {
        auto const& rule = _rws.rule(Symbol(r));
        auto const  name = _rws.rule_names().name(Symbol(r));
        if (rule.target.empty()) {
          throw InvalidSystem("rule " + name + " has no output");
        }
        if (rule.source.empty() && rule.target.size() != 1) {
          throw InvalidSystem("rule " + name + " has no input and several outputs");
        }
      }
      _table = CellTable(a);
      for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
          Symbol x(i), y(j);
          _swaps[{x, y}] = add("tau(" + a.name(x) + "," + a.name(y) + ")", {x, y}, {y, x},
                               {BarKind::swap, Symbol(), 0});
        }
      }
      for (std::size_t i = 0; i < a.size(); ++i) {
        Symbol x(i);
        _dups.push_back(add("delta(" + a.name(x) + ")", {x}, {x, x}, {BarKind::dup, Symbol(), 0}));
      }
      for (std::size_t r = 0; r < _rws.size(); ++r) {
        Symbol      rule = Symbol(r);
        Word        src  = repr_bar(_rws.rule(rule).source);
        Word        tgt  = repr_bar(_rws.rule(rule).target);
        std::string name = _rws.rule_names().name(rule);
        _splits.emplace_back();
        for (std::size_t k = 0; k < tgt.size(); ++k) {
          _splits.back().push_back(add(name + "[" + std::to_string(k + 1) + "]",
                                       src,
                                       {tgt[k]},
                                       {BarKind::split, rule, k + 1}));
        }
      }
    }

    CellTable const& table() const noexcept {
      return _table;
    }
    CommRws const& rws() const noexcept {
      return _rws;
    }
    Info const& info(Symbol cell) const {
      _table.source(cell);
      return _info[cell.id];
    }
    Symbol swap(Symbol x, Symbol y) const {
      return _swaps.at({x, y});
    }
    Symbol dup(Symbol x) const {
      return _dups.at(x.id);
    }
    // Output index i is 1-based.
    Symbol split(Symbol rule, std::size_t i) const {
      return _splits.at(rule.id).at(i - 1);
    }
    std::size_t outputs(Symbol rule) const {
      return _splits.at(rule.id).size();
    }

   private:
    Symbol add(std::string const& name, Word src, Word tgt, Info info) {
      _info.push_back(info);
      return _table.add_cell(name, std::move(src), std::move(tgt));
    }

    CommRws                                      _rws;
    CellTable                                    _table;
    std::vector<Info>                            _info;
    std::map<std::pair<Symbol, Symbol>, Symbol>  _swaps;
    std::vector<Symbol>                          _dups;
    std::vector<std::vector<Symbol>>             _splits;
  };

  inline BarPolygraph sigma_bar(CommRws const& rws) {
    return BarPolygraph(rws);
  }

  // A circuit up to the symmetric structure and the laws of duplication: the
  // split cells in a canonical order, each reading previously produced
  // values, and the values read by the outputs.  Value v < inputs.size() is
  // an input wire, larger values are node results.
  struct Wiring {
    struct Node {
      Symbol                   cell;
      std::vector<std::size_t> args;
      friend bool operator==(Node const&, Node const&) = default;
    };

    Word                     inputs;
    std::vector<Node>        nodes;
    std::vector<std::size_t> outputs;

    friend bool operator==(Wiring const&, Wiring const&) = default;
  };

  struct NormalizeStats {
    std::size_t              steps = 0;
    std::vector<std::size_t> weights;  // before the first step and after each
  };

  namespace detail {
    struct Port {
      std::size_t node;  // npos for an input wire
      std::size_t port;
      friend bool operator==(Port const&, Port const&) = default;
      friend auto operator<=>(Port const&, Port const&) = default;
    };

    inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    struct Graph {
      struct Node {
        Symbol            cell;
        BarKind           kind;
        std::vector<Port> in;
        bool              alive = true;
      };
      Word              inputs;
      std::vector<Node> nodes;
      std::vector<Port> outputs;

      void redirect(Port from, Port to) {
        for (auto& n : nodes) {
          if (n.alive) {
            std::replace(n.in.begin(), n.in.end(), from, to);
          }
        }
        std::replace(outputs.begin(), outputs.end(), from, to);
      }

      std::size_t weight() const {
        return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](Node const& n) {
          return n.alive && n.kind != BarKind::split;
        }));
      }
    };

    inline Graph build_graph(BarPolygraph const& bar, SlicedTwoArrow const& a) {
      auto const&       t = bar.table();
      Graph             g;
      std::vector<Port> wires;
      levels(t, a);
      g.inputs = a.start;
      for (std::size_t i = 0; i < a.start.size(); ++i) {
        wires.push_back({npos, i});
      }
      for (auto const& s : a.slices) {
        std::size_t const pos = s.left.size(), m = t.source(s.cell).size(),
                          n   = t.target(s.cell).size();
        std::size_t const id  = g.nodes.size();
        auto              first = wires.begin() + static_cast<std::ptrdiff_t>(pos);
        g.nodes.push_back({s.cell, bar.info(s.cell).kind,
                           std::vector<Port>(first, first + static_cast<std::ptrdiff_t>(m))});
        first = wires.erase(first, first + static_cast<std::ptrdiff_t>(m));
        std::vector<Port> outs;
        for (std::size_t k = 0; k < n; ++k) {
          outs.push_back({id, k});
        }
        wires.insert(first, outs.begin(), outs.end());
      }
      g.outputs = std::move(wires);
      return g;
    }

    // Removes the topmost crossing or duplication; false if none is left.
    inline bool eliminate_one(Graph& g) {
      for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        auto& n = g.nodes[k];
        if (!n.alive || n.kind == BarKind::split) {
          continue;
        }
        n.alive = false;
        if (n.kind == BarKind::swap) {
          Port const a = n.in[0], b = n.in[1];
          Port const tmp{npos - 1, 0};
          g.redirect({k, 0}, tmp);
          g.redirect({k, 1}, a);
          g.redirect(tmp, b);
        } else {
          g.redirect({k, 0}, n.in[0]);
          g.redirect({k, 1}, n.in[0]);
        }
        return true;
      }
      return false;
    }

    inline Wiring canonical_wiring(Graph const& g) {
      Wiring                          w;
      std::map<std::size_t, std::size_t> value;
      w.inputs = g.inputs;
      std::function<std::size_t(Port)> visit = [&](Port p) -> std::size_t {
        if (p.node == npos) {
          return p.port;
        }
        auto it = value.find(p.node);
        if (it != value.end()) {
          return it->second;
        }
        Wiring::Node node{g.nodes[p.node].cell, {}};
        for (Port q : g.nodes[p.node].in) {
          node.args.push_back(visit(q));
        }
        std::size_t v = w.inputs.size() + w.nodes.size();
        w.nodes.push_back(std::move(node));
        value.emplace(p.node, v);
        return v;
      };
      for (Port p : g.outputs) {
        w.outputs.push_back(visit(p));
      }
      return w;
    }
  }  // namespace detail

  inline Wiring wiring(BarPolygraph const& bar,
                       SlicedTwoArrow const& a,
                       std::size_t fuel = 10000,
                       NormalizeStats* stats = nullptr) {
    auto g = detail::build_graph(bar, a);
    if (stats != nullptr) {
      *stats = {};
      stats->weights.push_back(g.weight());
    }
    std::size_t steps = 0;
    while (true) {
      if (steps == fuel && g.weight() != 0) {
        throw FuelExhausted();
      }
      if (!detail::eliminate_one(g)) {
        break;
      }
      ++steps;
      if (stats != nullptr) {
        stats->steps = steps;
        stats->weights.push_back(g.weight());
      }
    }
    return detail::canonical_wiring(g);
  }

  // Lays a wiring out as slices: each node in turn gathers its arguments
  // (duplicating values still needed later, moving them together by adjacent
  // crossings) and is applied where its leftmost argument sat; the outputs
  // are gathered the same way at the end.
  inline SlicedTwoArrow serialize(BarPolygraph const& bar, Wiring const& w) {
    auto const& t = bar.table();
    struct Wire {
      std::size_t value;
      std::size_t uid;
      bool        selected;
    };
    std::size_t const        nvalues = w.inputs.size() + w.nodes.size();
    std::vector<std::size_t> remaining(nvalues, 0);
    Word                     type = w.inputs;
    for (auto const& n : w.nodes) {
      type.push_back(t.target(n.cell).at(0));
      for (auto v : n.args) {
        ++remaining.at(v);
      }
    }
    for (auto v : w.outputs) {
      ++remaining.at(v);
    }
    for (std::size_t v = 0; v < w.inputs.size(); ++v) {
      if (remaining[v] == 0) {
        throw InvalidArrow("input wire " + std::to_string(v) + " is never used");
      }
    }

    SlicedTwoArrow    out{w.inputs, {}};
    std::vector<Wire> wires;
    std::size_t       next_uid = 0;
    for (std::size_t v = 0; v < w.inputs.size(); ++v) {
      wires.push_back({v, next_uid++, false});
    }
    auto word = [&] {
      Word u;
      for (auto const& x : wires) {
        u.push_back(type[x.value]);
      }
      return u;
    };
    auto emit = [&](std::size_t pos, Symbol cell) {
      out.slices.push_back(make_slice(t, word(), pos, cell));
    };
    auto take = [&](std::size_t v) {
      std::size_t p = 0;
      while (p < wires.size() && (wires[p].value != v || wires[p].selected)) {
        ++p;
      }
      if (p == wires.size() || remaining[v] == 0) {
        throw InvalidArrow("value " + std::to_string(v) + " is not available");
      }
      if (remaining[v] > 1) {
        emit(p, bar.dup(type[v]));
        wires.insert(wires.begin() + static_cast<std::ptrdiff_t>(p) + 1, {v, next_uid++, false});
      }
      --remaining[v];
      wires[p].selected = true;
      return wires[p].uid;
    };
    // Brings the wires `uids` together, in order, at the position of the
    // leftmost one; returns that position.
    auto gather = [&](std::vector<std::size_t> const& uids) {
      std::size_t first = wires.size();
      for (std::size_t i = 0; i < wires.size(); ++i) {
        if (wires[i].selected) {
          first = std::min(first, i);
        }
      }
      std::vector<std::size_t> order;
      for (std::size_t i = 0; i < first; ++i) {
        order.push_back(wires[i].uid);
      }
      order.insert(order.end(), uids.begin(), uids.end());
      for (std::size_t i = first; i < wires.size(); ++i) {
        if (!wires[i].selected) {
          order.push_back(wires[i].uid);
        }
      }
      for (std::size_t i = 0; i < order.size(); ++i) {
        std::size_t j = i;
        while (wires[j].uid != order[i]) {
          ++j;
        }
        for (std::size_t k = j; k > i; --k) {
          emit(k - 1, bar.swap(type[wires[k - 1].value], type[wires[k].value]));
          std::swap(wires[k - 1], wires[k]);
        }
      }
      return first;
    };

    for (std::size_t j = 0; j < w.nodes.size(); ++j) {
      auto const&              node = w.nodes[j];
      std::vector<std::size_t> uids;
      for (auto v : node.args) {
        uids.push_back(take(v));
      }
      std::size_t pos = uids.empty() ? wires.size() : gather(uids);
      emit(pos, node.cell);
      auto first = wires.begin() + static_cast<std::ptrdiff_t>(pos);
      first      = wires.erase(first, first + static_cast<std::ptrdiff_t>(uids.size()));
      wires.insert(first, {w.inputs.size() + j, next_uid++, false});
    }
    std::vector<std::size_t> uids;
    for (auto v : w.outputs) {
      uids.push_back(take(v));
    }
    if (uids.size() != wires.size()) {
      throw InvalidArrow("a produced value is never used");
    }
    if (!uids.empty()) {
      gather(uids);
    }
    return out;
  }

  inline SlicedTwoArrow normalize(BarPolygraph const& bar,
                                  SlicedTwoArrow const& a,
                                  std::size_t fuel = 10000,
                                  NormalizeStats* stats = nullptr) {
    return serialize(bar, wiring(bar, a, fuel, stats));
  }

  inline bool check_equiv_R(BarPolygraph const& bar,
                            SlicedTwoArrow const& a,
                            SlicedTwoArrow const& b,
                            std::size_t fuel = 10000) {
    if (a.start != b.start || target(bar.table(), a) != target(bar.table(), b)) {
      return false;
    }
    return normalize(bar, a, fuel) == normalize(bar, b, fuel);
  }

  // Normal-form duplication of the word u into n consecutive copies.
  inline SlicedTwoArrow dup_power(BarPolygraph const& bar, Word const& u, std::size_t n) {
    Wiring w{u, {}, {}};
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < u.size(); ++i) {
        w.outputs.push_back(i);
      }
    }
    return serialize(bar, w);
  }

  // The circuit standing for a rule cell: duplicate the input once per output
  // and feed each copy to one split cell.
  inline SlicedTwoArrow phi_bar(BarPolygraph const& bar, Symbol rule) {
    auto const&    t   = bar.table();
    std::size_t    n   = bar.outputs(rule);
    Word           src = t.source(bar.split(rule, 1));
    SlicedTwoArrow a   = dup_power(bar, src, n);
    Word           cur = target(t, a);
    for (std::size_t i = 1; i <= n; ++i) {
      a.slices.push_back(make_slice(t, cur, i - 1, bar.split(rule, i)));
      cur = slice_output(t, a.slices.back());
    }
    return a;
  }

  // Image of a 2-arrow of the 2-polygraph of the same system: permutations
  // are kept, rule slices are replaced by their whiskered circuits.
  inline SlicedTwoArrow phi_bar(BarPolygraph const& bar,
                                TwoPolygraph const& g,
                                SlicedTwoArrow const& a) {
    levels(g.table(), a);
    SlicedTwoArrow out{a.start, {}};
    for (auto const& s : a.slices) {
      if (auto r = g.rule_of(s.cell)) {
        auto c = whisker(phi_bar(bar, *r), s.left, s.right);
        out.slices.insert(out.slices.end(), c.slices.begin(), c.slices.end());
      } else {
        Word const& src = g.table().source(s.cell);
        out.slices.push_back({s.left, bar.swap(src[0], src[1]), s.right});
      }
    }
    return out;
  }

  struct RewriteRule {
    std::string    family;
    SlicedTwoArrow lhs;
    SlicedTwoArrow rhs;
  };

  // The oriented slice-level rules: swap involution, Yang-Baxter,
  // cocommutativity, coassociativity, naturality of duplication and of split
  // cells with respect to crossings, and reordering of sibling split cells.
  inline std::vector<RewriteRule> adopted_rules(BarPolygraph const& bar) {
    using detail::run;
    auto const&              t = bar.table();
    std::vector<RewriteRule> out;
    std::size_t const        n = t.one_cells().size();
    auto                     tau = [&](Symbol a, Symbol b) { return bar.swap(a, b); };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Symbol x(i), y(j);
        out.push_back({"involution", run(t, {x, y}, {{0, tau(x, y)}, {0, tau(y, x)}}), {{x, y}, {}}});
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          Symbol a(i), b(j), c(k);
          out.push_back({"yang-baxter",
                         run(t, {a, b, c}, {{0, tau(a, b)}, {1, tau(a, c)}, {0, tau(b, c)}}),
                         run(t, {a, b, c}, {{1, tau(b, c)}, {0, tau(a, c)}, {1, tau(a, b)}})});
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      Symbol x(i);
      out.push_back({"cocommutativity",
                     run(t, {x}, {{0, bar.dup(x)}, {0, tau(x, x)}}),
                     run(t, {x}, {{0, bar.dup(x)}})});
      out.push_back({"coassociativity",
                     run(t, {x}, {{0, bar.dup(x)}, {0, bar.dup(x)}}),
                     run(t, {x}, {{0, bar.dup(x)}, {1, bar.dup(x)}})});
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Symbol x(i), w(j);
        out.push_back({"dup-naturality",
                       run(t, {x, w}, {{0, bar.dup(x)}, {1, tau(x, w)}, {0, tau(x, w)}}),
                       run(t, {x, w}, {{0, tau(x, w)}, {1, bar.dup(x)}})});
        out.push_back({"dup-naturality",
                       run(t, {w, x}, {{1, bar.dup(x)}, {0, tau(w, x)}, {1, tau(w, x)}}),
                       run(t, {w, x}, {{0, tau(w, x)}, {0, bar.dup(x)}})});
      }
    }
    for (std::size_t c = 0; c < t.cells().size(); ++c) {
      Symbol cell(c);
      if (bar.info(cell).kind != BarKind::split) {
        continue;
      }
      Word const&       src = t.source(cell);
      Symbol const      y   = t.target(cell)[0];
      std::size_t const m   = src.size();
      for (std::size_t j = 0; j < n; ++j) {
        Symbol w(j);
        // w crossing from right to left, then from left to right.
        std::vector<std::pair<std::size_t, Symbol>> in_side, out_side{{0, cell}, {0, tau(y, w)}};
        for (std::size_t k = m; k > 0; --k) {
          in_side.emplace_back(k - 1, tau(src[k - 1], w));
        }
        in_side.emplace_back(1, cell);
        auto a = run(t, concat(src, {w}), in_side), b = run(t, concat(src, {w}), out_side);
        out.push_back(m == 0 ? RewriteRule{"split-naturality", b, a}
                             : RewriteRule{"split-naturality", a, b});
        in_side.clear();
        for (std::size_t k = 0; k < m; ++k) {
          in_side.emplace_back(k, tau(w, src[k]));
        }
        in_side.emplace_back(0, cell);
        out_side = {{1, cell}, {0, tau(w, y)}};
        a        = run(t, concat({w}, src), in_side);
        b        = run(t, concat({w}, src), out_side);
        out.push_back(m == 0 ? RewriteRule{"split-naturality", b, a}
                             : RewriteRule{"split-naturality", a, b});
      }
    }
    for (std::size_t r = 0; r < bar.rws().size(); ++r) {
      Symbol rule(r);
      Word   src = t.source(bar.split(rule, 1));
      if (src.size() != 1) {
        continue;
      }
      for (std::size_t i = 1; i <= bar.outputs(rule); ++i) {
        for (std::size_t j = i + 1; j <= bar.outputs(rule); ++j) {
          Symbol ai = bar.split(rule, i), aj = bar.split(rule, j);
          Symbol yi = t.target(ai)[0], yj = t.target(aj)[0];
          out.push_back({"split-order",
                         run(t, src, {{0, bar.dup(src[0])}, {0, aj}, {1, ai}}),
                         run(t, src, {{0, bar.dup(src[0])}, {0, ai}, {1, aj}, {0, tau(yi, yj)}})});
        }
      }
    }
    return out;
  }

  // Rewrites the occurrence of rule.lhs starting at slice i, if there is one.
  inline std::optional<SlicedTwoArrow> rewrite_at(CellTable const& t,
                                                  SlicedTwoArrow const& a,
                                                  RewriteRule const& rule,
                                                  std::size_t i) {
    std::size_t const k = rule.lhs.size();
    if (k == 0 || i + k > a.size()) {
      return std::nullopt;
    }
    auto const& s0 = a.slices[i];
    auto const& l0 = rule.lhs.slices[0];
    if (s0.cell != l0.cell || s0.left.size() < l0.left.size()) {
      return std::nullopt;
    }
    Word        w  = slice_input(t, s0);
    std::size_t ul = s0.left.size() - l0.left.size();
    if (ul + rule.lhs.start.size() > w.size()) {
      return std::nullopt;
    }
    Word u = subword(w, 0, ul);
    Word v = subword(w, ul + rule.lhs.start.size(), w.size() - ul - rule.lhs.start.size());
    auto pattern = whisker(rule.lhs, u, v);
    if (pattern.start != w
        || !std::equal(pattern.slices.begin(), pattern.slices.end(),
                       a.slices.begin() + static_cast<std::ptrdiff_t>(i))) {
      return std::nullopt;
    }
    auto           repl = whisker(rule.rhs, u, v);
    SlicedTwoArrow b{a.start, {}};
    b.slices.insert(b.slices.end(), a.slices.begin(), a.slices.begin() + static_cast<std::ptrdiff_t>(i));
    b.slices.insert(b.slices.end(), repl.slices.begin(), repl.slices.end());
    b.slices.insert(b.slices.end(), a.slices.begin() + static_cast<std::ptrdiff_t>(i + k), a.slices.end());
    return b;
  }

  struct CriticalPair {
    std::size_t    rule1, rule2;
    SlicedTwoArrow peak, branch1, branch2;
  };

  // Overlaps of two left-hand sides sharing at least one slice: rule2's
  // pattern starts at slice d of rule1's, both placed in the smallest common
  // frame.  Peaks longer than `max_slices` or wider than `max_wires` are
  // skipped.
  inline std::vector<CriticalPair> critical_pairs(BarPolygraph const& bar,
                                                  std::vector<RewriteRule> const& rules,
                                                  std::size_t max_slices = 4,
                                                  std::size_t max_wires  = 6) {
    auto const&               t = bar.table();
    std::vector<CriticalPair> out;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      auto const& r1 = rules[i].lhs;
      auto const  w1 = levels(t, r1);
      for (std::size_t j = 0; j < rules.size(); ++j) {
        auto const& r2 = rules[j].lhs;
        for (std::size_t d = 0; d < r1.size(); ++d) {
          if ((i == j && d == 0) || r2.size() == 0 || std::max(r1.size(), d + r2.size()) > max_slices
              || r1.slices[d].cell != r2.slices[0].cell) {
            continue;
          }
          std::size_t const l1 = r1.slices[d].left.size(), l2 = r2.slices[0].left.size();
          std::size_t const a = l1 >= l2 ? 0 : l2 - l1, b = l1 >= l2 ? l1 - l2 : 0;
          std::size_t const len = std::max(a + w1[d].size(), b + r2.start.size());
          std::vector<std::optional<Symbol>> frame(len);
          bool ok = true;
          for (std::size_t p = 0; p < w1[d].size(); ++p) {
            frame[a + p] = w1[d][p];
          }
          for (std::size_t p = 0; p < r2.start.size() && ok; ++p) {
            ok = !frame[b + p] || *frame[b + p] == r2.start[p];
            frame[b + p] = r2.start[p];
          }
          if (!ok || std::any_of(frame.begin(), frame.end(), [](auto const& s) { return !s; })) {
            continue;
          }
          Word full;
          for (auto const& s : frame) {
            full.push_back(*s);
          }
          Word pre  = subword(full, 0, a);
          Word post = subword(full, a + w1[d].size(), len - a - w1[d].size());
          SlicedTwoArrow peak = whisker(r1, pre, post);
          Word           cur  = target(t, peak);
          // Tail of rule2 beyond rule1, placed at rule2's frame offset.
          std::size_t    shift = b;
          try {
            for (std::size_t k = r1.size() - d; k < r2.size(); ++k) {
              auto const& s = r2.slices[k];
              peak.slices.push_back(make_slice(t, cur, shift + s.left.size(), s.cell));
              cur = slice_output(t, peak.slices.back());
            }
          } catch (InvalidArrow const&) {
            continue;
          }
          std::size_t width = 0;
          for (auto const& w : levels(t, peak)) {
            width = std::max(width, w.size());
          }
          if (width > max_wires) {
            continue;
          }
          auto b1 = rewrite_at(t, peak, rules[i], 0);
          auto b2 = rewrite_at(t, peak, rules[j], d);
          if (!b1 || !b2) {
            continue;
          }
          out.push_back({i, j, std::move(peak), std::move(*b1), std::move(*b2)});
        }
      }
    }
    return out;
  }

}  // namespace petri

#endif  // PETRI_CIRCUIT_NF_HPP_
