// 3-polygraphs with one 0-cell and no 1-cells: places as 2-cells,
// transitions as 3-cells.  Their 2-arrows collapse to multisets.

#ifndef PETRI_POLYGRAPH3_HPP_
#define PETRI_POLYGRAPH3_HPP_

#include <deque>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "comm_rws.hpp"

namespace petri {

  struct HasOneCells : error {
    HasOneCells() : error("polygraph has 1-cells, it does not come from a Petri net") {}
  };

  struct UnknownCell : error {
    Symbol cell;
    explicit UnknownCell(Symbol c)
        : error("unknown 3-cell #" + std::to_string(c.id)), cell(c) {}
  };

  struct ThreePolygraph {
    struct Cell {
      Multiset    source;
      Multiset    target;
      friend bool operator==(Cell const&, Cell const&) = default;
    };

    Alphabet          one_cells;
    Alphabet          two_cells;
    Alphabet          three_cell_names;
    std::vector<Cell> three_cells;

    Cell const& cell(Symbol c) const {
      if (!three_cell_names.valid(c)) {
        throw UnknownCell(c);
      }
      return three_cells[c.id];
    }

    friend bool operator==(ThreePolygraph const&, ThreePolygraph const&) = default;
  };

  inline ThreePolygraph sigma3(CommRws const& rws) {
    ThreePolygraph p;
    p.two_cells = rws.alphabet();
    for (std::size_t i = 0; i < rws.size(); ++i) {
      Symbol r(i);
      p.three_cell_names.add(rws.rule_names().name(r));
      p.three_cells.push_back({rws.rule(r).source, rws.rule(r).target});
    }
    return p;
  }

  inline CommRws nr(ThreePolygraph const& p) {
    if (p.one_cells.size() != 0) {
      throw HasOneCells();
    }
    CommRws rws;
    for (auto const& n : p.two_cells.names()) {
      rws.add_symbol(n);
    }
    for (std::size_t i = 0; i < p.three_cells.size(); ++i) {
      rws.add_rule(p.three_cell_names.name(Symbol(i)),
                   p.three_cells[i].source,
                   p.three_cells[i].target);
    }
    return rws;
  }

  // An arrow (f, cell, g) of the reduction graph, kept in the form
  // (f + g, cell, 0).
  struct Triple {
    Multiset f;
    Symbol   cell;
    Multiset g;

    friend bool operator==(Triple const&, Triple const&) = default;
    friend bool operator<(Triple const& a, Triple const& b) {
      return std::tie(a.f, a.cell, a.g) < std::tie(b.f, b.cell, b.g);
    }
  };

  inline Triple canon_triple(ThreePolygraph const& p,
                             Multiset const& f,
                             Symbol cell,
                             Multiset const& g) {
    p.cell(cell);
    return {f + g, cell, {}};
  }

  inline Multiset source(ThreePolygraph const& p, Triple const& t) {
    return t.f + t.g + p.cell(t.cell).source;
  }

  inline Multiset target(ThreePolygraph const& p, Triple const& t) {
    return t.f + t.g + p.cell(t.cell).target;
  }

  inline Triple to_triple(ThreePolygraph const& p, ReductionStep const& s) {
    return canon_triple(p, s.context, s.rule, {});
  }

  inline ReductionStep to_step(ThreePolygraph const& p, Triple const& t) {
    p.cell(t.cell);
    return {t.f + t.g, t.cell};
  }

  struct TriplePath {
    Multiset            start;
    std::vector<Triple> triples;

    friend bool operator==(TriplePath const&, TriplePath const&) = default;
    friend bool operator<(TriplePath const& a, TriplePath const& b) {
      return std::tie(a.start, a.triples) < std::tie(b.start, b.triples);
    }
  };

  inline TriplePath to_triples(ThreePolygraph const& p, NetPath const& q) {
    TriplePath out{q.start, {}};
    for (auto const& s : q.steps) {
      out.triples.push_back(to_triple(p, s));
    }
    return out;
  }

  inline NetPath to_steps(ThreePolygraph const& p, TriplePath const& q) {
    NetPath out{q.start, {}};
    for (auto const& t : q.triples) {
      out.steps.push_back(to_step(p, t));
    }
    return out;
  }

  // One exchange (A + s(B)) * (t(A) + B) -> (s(A) + B) * (A + t(B)) on the
  // triples i, i+1; whether it applies is decided by the net-side swap.
  inline std::optional<TriplePath> exchange3_at(ThreePolygraph const& p,
                                                PetriNet const& net,
                                                TriplePath const& q,
                                                std::size_t i) {
    if (i + 1 >= q.triples.size()) {
      throw IndexOutOfRange();
    }
    NetPath two{source(p, q.triples[i]), {to_step(p, q.triples[i]), to_step(p, q.triples[i + 1])}};
    auto    swapped = swap_at(net, two, 0);
    if (!swapped) {
      return std::nullopt;
    }
    TriplePath r     = q;
    r.triples[i]     = to_triple(p, swapped->steps[0]);
    r.triples[i + 1] = to_triple(p, swapped->steps[1]);
    return r;
  }

  inline std::set<TriplePath> exchange3_class(ThreePolygraph const& p,
                                              TriplePath const& q,
                                              std::size_t cap) {
    PetriNet               net = psi(nr(p));
    std::set<TriplePath>   seen{q};
    std::deque<TriplePath> queue{q};
    if (seen.size() > cap) {
      throw CapExceeded();
    }
    while (!queue.empty()) {
      TriplePath cur = std::move(queue.front());
      queue.pop_front();
      for (std::size_t i = 0; i + 1 < cur.triples.size(); ++i) {
        auto r = exchange3_at(p, net, cur, i);
        if (!r || seen.count(*r) != 0) {
          continue;
        }
        seen.insert(*r);
        if (seen.size() > cap) {
          throw CapExceeded();
        }
        queue.push_back(std::move(*r));
      }
    }
    return seen;
  }

  inline bool exchange3_equivalent(ThreePolygraph const& p,
                                   TriplePath const& a,
                                   TriplePath const& b,
                                   std::size_t cap) {
    if (a.start != b.start || a.triples.size() != b.triples.size()) {
      return false;
    }
    return exchange3_class(p, a, cap).count(b) != 0;
  }

  // Formal composites of 2-arrows built from 2-cells, the unit, the
  // horizontal composite and the vertical composite.
  class Composite {
   public:
    enum class Kind { unit, cell, tensor, compose };

    static Composite unit() {
      return Composite(Kind::unit, Symbol(), nullptr, nullptr);
    }
    static Composite cell(Symbol s) {
      return Composite(Kind::cell, s, nullptr, nullptr);
    }
    static Composite tensor(Composite a, Composite b) {
      return Composite(Kind::tensor, Symbol(), std::make_shared<Composite>(std::move(a)),
                       std::make_shared<Composite>(std::move(b)));
    }
    static Composite compose(Composite a, Composite b) {
      return Composite(Kind::compose, Symbol(), std::make_shared<Composite>(std::move(a)),
                       std::make_shared<Composite>(std::move(b)));
    }

    static Composite from(Multiset const& m) {
      Composite c = unit();
      for (auto const& [s, k] : m) {
        for (count_type i = 0; i < k; ++i) {
          c = c.kind() == Kind::unit ? cell(s) : tensor(std::move(c), cell(s));
        }
      }
      return c;
    }

    Kind kind() const noexcept {
      return _kind;
    }

    // With no 1-cells every 2-cell goes from the empty 1-arrow to itself, so
    // both composites reduce to juxtaposition of cells.
    Multiset evaluate() const {
      switch (_kind) {
        case Kind::unit: return {};
        case Kind::cell: return Multiset::of(_cell);
        case Kind::tensor:
        case Kind::compose: return _lhs->evaluate() + _rhs->evaluate();
      }
      return {};
    }

   private:
    Composite(Kind k, Symbol s, std::shared_ptr<Composite const> a, std::shared_ptr<Composite const> b)
        : _kind(k), _cell(s), _lhs(std::move(a)), _rhs(std::move(b)) {}

    Kind                             _kind;
    Symbol                           _cell;
    std::shared_ptr<Composite const> _lhs, _rhs;
  };

  // a (x) b, a o b, b (x) a and b o a must agree, the unit must be neutral on
  // both sides for both composites, and interchange must hold.
  inline bool eckmann_hilton_probe(Composite const& a, Composite const& b) {
    using C         = Composite;
    Multiset const v = C::tensor(a, b).evaluate();
    bool           ok = v == C::compose(a, b).evaluate()
                && v == C::tensor(b, a).evaluate()
                && v == C::compose(b, a).evaluate();
    for (auto const* x : {&a, &b}) {
      ok = ok && C::tensor(C::unit(), *x).evaluate() == x->evaluate()
           && C::compose(*x, C::unit()).evaluate() == x->evaluate();
    }
    ok = ok
         && C::tensor(C::compose(a, b), C::compose(b, a)).evaluate()
                == C::compose(C::tensor(a, b), C::tensor(b, a)).evaluate();
    return ok;
  }

}  // namespace petri

#endif  // PETRI_POLYGRAPH3_HPP_
