// 2-polygraphs with explicit permutation cells: sliced 2-arrows, permutation
// lifting, projection onto rewriting paths, and exchange equivalence.

#ifndef PETRI_POLYGRAPH2_HPP_
#define PETRI_POLYGRAPH2_HPP_

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "comm_rws.hpp"

namespace petri {

  struct InvalidArrow : error {
    using error::error;
  };

  struct ParikhMismatch : error {
    ParikhMismatch() : error("words have different Parikh images") {}
  };

  // 2-cells over a set of 1-cells, each with a source and a target word.
  class CellTable {
   public:
    CellTable() = default;
    explicit CellTable(Alphabet one_cells) : _one(std::move(one_cells)) {}

    Symbol add_cell(std::string const& name, Word src, Word tgt) {
      Symbol c = _names.add(name);
      _src.push_back(std::move(src));
      _tgt.push_back(std::move(tgt));
      return c;
    }

    Alphabet const& one_cells() const noexcept {
      return _one;
    }
    Alphabet const& cells() const noexcept {
      return _names;
    }
    Word const& source(Symbol c) const {
      check(c);
      return _src[c.id];
    }
    Word const& target(Symbol c) const {
      check(c);
      return _tgt[c.id];
    }

   private:
    void check(Symbol c) const {
      if (!_names.valid(c)) {
        throw InvalidArrow("unknown cell #" + std::to_string(c.id));
      }
    }

    Alphabet          _one;
    Alphabet          _names;
    std::vector<Word> _src, _tgt;
  };

  // One whiskered cell application: left . cell . right.
  struct Slice {
    Word   left;
    Symbol cell;
    Word   right;

    friend bool operator==(Slice const&, Slice const&) = default;
    friend bool operator<(Slice const& a, Slice const& b) {
      return std::tie(a.left, a.cell, a.right) < std::tie(b.left, b.cell, b.right);
    }
  };

  struct SlicedTwoArrow {
    Word               start;
    std::vector<Slice> slices;

    std::size_t size() const noexcept {
      return slices.size();
    }

    friend bool operator==(SlicedTwoArrow const&, SlicedTwoArrow const&) = default;
    friend bool operator<(SlicedTwoArrow const& a, SlicedTwoArrow const& b) {
      return std::tie(a.start, a.slices) < std::tie(b.start, b.slices);
    }
  };

  inline Word slice_input(CellTable const& t, Slice const& s) {
    return concat(s.left, t.source(s.cell), s.right);
  }

  inline Word slice_output(CellTable const& t, Slice const& s) {
    return concat(s.left, t.target(s.cell), s.right);
  }

  // The slice applying `cell` at position `pos` of `w`.
  inline Slice make_slice(CellTable const& t, Word const& w, std::size_t pos, Symbol cell) {
    Word const& src = t.source(cell);
    if (pos + src.size() > w.size()
        || !std::equal(src.begin(), src.end(), w.begin() + static_cast<std::ptrdiff_t>(pos))) {
      throw InvalidArrow("cell " + t.cells().name(cell) + " does not apply at position "
                         + std::to_string(pos));
    }
    return {subword(w, 0, pos), cell, subword(w, pos + src.size(), w.size() - pos - src.size())};
  }

  // Words before each slice and after the last one; throws on a slice whose
  // input does not match.
  inline std::vector<Word> levels(CellTable const& t, SlicedTwoArrow const& a) {
    std::vector<Word> out{a.start};
    for (std::size_t i = 0; i < a.slices.size(); ++i) {
      if (slice_input(t, a.slices[i]) != out.back()) {
        throw InvalidArrow("slice " + std::to_string(i) + " does not compose");
      }
      out.push_back(slice_output(t, a.slices[i]));
    }
    return out;
  }

  inline Word target(CellTable const& t, SlicedTwoArrow const& a) {
    return levels(t, a).back();
  }

  inline bool well_formed(CellTable const& t, SlicedTwoArrow const& a) {
    try {
      levels(t, a);
      return true;
    } catch (error const&) {
      return false;
    }
  }

  inline SlicedTwoArrow compose(CellTable const& t, SlicedTwoArrow a, SlicedTwoArrow const& b) {
    if (target(t, a) != b.start) {
      throw InvalidArrow("arrows do not compose");
    }
    a.slices.insert(a.slices.end(), b.slices.begin(), b.slices.end());
    return a;
  }

  inline SlicedTwoArrow whisker(SlicedTwoArrow a, Word const& u, Word const& v) {
    a.start = concat(u, a.start, v);
    for (auto& s : a.slices) {
      s.left  = concat(u, s.left);
      s.right = concat(s.right, v);
    }
    return a;
  }

  inline std::string to_string(Slice const& s, CellTable const& t) {
    return to_string(s.left, t.one_cells()) + " | " + t.cells().name(s.cell) + " | "
           + to_string(s.right, t.one_cells());
  }

  // `start <word>` followed by one `left | cell | right` line per slice.
  inline std::string to_string(SlicedTwoArrow const& a, CellTable const& t) {
    std::string out = "start " + to_string(a.start, t.one_cells()) + "\n";
    for (auto const& s : a.slices) {
      out += to_string(s, t) + "\n";
    }
    return out;
  }

  inline SlicedTwoArrow parse_arrow(std::string const& text, CellTable const& t) {
    SlicedTwoArrow     a;
    std::istringstream in(text);
    std::string        line;
    bool               have_start = false;
    std::size_t        lineno     = 0;
    auto               trim       = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
      ++lineno;
      line = trim(line.substr(0, line.find('#')));
      if (line.empty()) {
        continue;
      }
      if (line.rfind("start", 0) == 0 && line.find('|') == std::string::npos) {
        a.start    = parse_word(line.substr(5), t.one_cells());
        have_start = true;
        continue;
      }
      auto p1 = line.find('|');
      auto p2 = line.find('|', p1 + 1);
      if (p1 == std::string::npos || p2 == std::string::npos) {
        throw InvalidArrow("line " + std::to_string(lineno) + ": expected left | cell | right");
      }
      Slice s{parse_word(line.substr(0, p1), t.one_cells()),
              t.cells().at(trim(line.substr(p1 + 1, p2 - p1 - 1))),
              parse_word(line.substr(p2 + 1), t.one_cells())};
      if (!have_start && a.slices.empty()) {
        a.start    = slice_input(t, s);
        have_start = true;
      }
      a.slices.push_back(std::move(s));
    }
    levels(t, a);
    return a;
  }

  // The 2-polygraph of a commutative rewriting system: one cell per rule with
  // sorted boundaries, plus the explicit permutations.
  class TwoPolygraph {
   public:
    TwoPolygraph() = default;

    TwoPolygraph(CommRws rws, bool extended) : _rws(std::move(rws)), _extended(extended) {
      _table = CellTable(_rws.alphabet());
      for (std::size_t i = 0; i < _rws.size(); ++i) {
        Symbol r(i);
        _table.add_cell(_rws.rule_names().name(r),
                        sorted_word(_rws.rule(r).source),
                        sorted_word(_rws.rule(r).target));
        _rule_of.push_back(r);
      }
      auto const& a = _rws.alphabet();
      for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
          if (i == j && !extended) {
            continue;
          }
          Symbol x(i), y(j);
          Symbol c = _table.add_cell("tau(" + a.name(x) + "," + a.name(y) + ")", {x, y}, {y, x});
          _swaps.emplace(std::pair{x, y}, c);
          _rule_of.push_back(std::nullopt);
        }
      }
    }

    CellTable const& table() const noexcept {
      return _table;
    }
    CommRws const& rws() const noexcept {
      return _rws;
    }
    bool extended() const noexcept {
      return _extended;
    }

    // The rule a cell stands for, or nothing for a permutation cell.
    std::optional<Symbol> rule_of(Symbol cell) const {
      _table.source(cell);
      return _rule_of[cell.id];
    }

    Symbol rule_cell(Symbol rule) const {
      _rws.rule(rule);
      return Symbol(rule.id);
    }

    std::optional<Symbol> swap(Symbol x, Symbol y) const {
      auto it = _swaps.find({x, y});
      if (it == _swaps.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    Symbol swap_or_throw(Symbol x, Symbol y) const {
      auto c = swap(x, y);
      if (!c) {
        throw InvalidArrow("no permutation cell for the pair "
                           + _rws.alphabet().name(x) + "," + _rws.alphabet().name(y));
      }
      return *c;
    }

   private:
    static Word sorted_word(Multiset const& m) {
      Word w;
      for (auto const& [s, k] : m) {
        w.insert(w.end(), k, s);
      }
      return w;
    }

    CommRws                                 _rws;
    CellTable                               _table;
    std::vector<std::optional<Symbol>>      _rule_of;
    std::map<std::pair<Symbol, Symbol>, Symbol> _swaps;
    bool                                    _extended = false;
  };

  // Letters grouped by symbol in increasing order.
  inline Word repr_bar(Multiset const& m) {
    Word w;
    for (auto const& [s, k] : m) {
      w.insert(w.end(), k, s);
    }
    return w;
  }

  inline TwoPolygraph sigma2(CommRws const& rws, bool extended = false) {
    return TwoPolygraph(rws, extended);
  }

  // Adjacent transpositions turning u into v: for each position, the first
  // matching letter to its right is bubbled leftwards.
  inline SlicedTwoArrow lift_permutation(TwoPolygraph const& g, Word const& u, Word const& v) {
    if (parikh(u) != parikh(v)) {
      throw ParikhMismatch();
    }
    SlicedTwoArrow a{u, {}};
    Word           cur = u;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      std::size_t j = i;
      while (cur[j] != v[i]) {
        ++j;
      }
      for (std::size_t k = j; k > i; --k) {
        Symbol c = g.swap_or_throw(cur[k - 1], cur[k]);
        a.slices.push_back(make_slice(g.table(), cur, k - 1, c));
        std::swap(cur[k - 1], cur[k]);
      }
    }
    return a;
  }

  inline NetPath pi_path(TwoPolygraph const& g, SlicedTwoArrow const& a) {
    levels(g.table(), a);
    NetPath p{parikh(a.start), {}};
    for (auto const& s : a.slices) {
      if (auto r = g.rule_of(s.cell)) {
        p.steps.push_back({parikh(s.left) + parikh(s.right), *r});
      }
    }
    return p;
  }

  // Rule slices placed on the leftmost occurrence of the rule's source word,
  // after a permutation block when that word is not contiguous.
  inline SlicedTwoArrow lift_path(TwoPolygraph const& g, NetPath const& p) {
    auto const&    rws = g.rws();
    SlicedTwoArrow a{repr_bar(p.start), {}};
    Word           cur = a.start;
    for (auto const& step : p.steps) {
      if (parikh(cur) != source(rws, step)) {
        throw InvalidPath("path does not compose");
      }
      Symbol      cell = g.rule_cell(step.rule);
      Word const& src  = g.table().source(cell);
      std::size_t pos  = cur.size() + 1;
      for (std::size_t i = 0; i + src.size() <= cur.size(); ++i) {
        if (std::equal(src.begin(), src.end(), cur.begin() + static_cast<std::ptrdiff_t>(i))) {
          pos = i;
          break;
        }
      }
      if (pos > cur.size()) {
        Word want = concat(repr_bar(step.context), src);
        auto perm = lift_permutation(g, cur, want);
        a.slices.insert(a.slices.end(), perm.slices.begin(), perm.slices.end());
        cur = want;
        pos = cur.size() - src.size();
      }
      Slice s = make_slice(g.table(), cur, pos, cell);
      cur     = slice_output(g.table(), s);
      a.slices.push_back(std::move(s));
    }
    return a;
  }

  // Exchange of slices i and i+1 when the output interval of the first and
  // the input interval of the second are disjoint.
  inline std::optional<SlicedTwoArrow> exchange_at(CellTable const& t,
                                                   SlicedTwoArrow const& a,
                                                   std::size_t i) {
    if (i + 1 >= a.slices.size()) {
      throw IndexOutOfRange();
    }
    Slice const& f  = a.slices[i];
    Slice const& g  = a.slices[i + 1];
    std::size_t  f0 = f.left.size(), f_in = t.source(f.cell).size(),
                f_out = t.target(f.cell).size();
    std::size_t g0 = g.left.size(), g_in = t.source(g.cell).size();
    Word        w  = slice_input(t, f);
    Slice       first, second;
    if (g0 + g_in <= f0) {
      first = make_slice(t, w, g0, g.cell);
      second = make_slice(t, slice_output(t, first), f0 - g_in + t.target(g.cell).size(), f.cell);
    } else if (g0 >= f0 + f_out) {
      first  = make_slice(t, w, g0 - f_out + f_in, g.cell);
      second = make_slice(t, slice_output(t, first), f0, f.cell);
    } else {
      return std::nullopt;
    }
    SlicedTwoArrow b = a;
    b.slices[i]      = std::move(first);
    b.slices[i + 1]  = std::move(second);
    return b;
  }

  inline std::set<SlicedTwoArrow> exchange_class(CellTable const& t,
                                                 SlicedTwoArrow const& a,
                                                 std::size_t cap) {
    levels(t, a);
    std::set<SlicedTwoArrow>   seen{a};
    std::deque<SlicedTwoArrow> queue{a};
    if (seen.size() > cap) {
      throw CapExceeded();
    }
    while (!queue.empty()) {
      SlicedTwoArrow cur = std::move(queue.front());
      queue.pop_front();
      for (std::size_t i = 0; i + 1 < cur.slices.size(); ++i) {
        auto b = exchange_at(t, cur, i);
        if (!b || seen.count(*b) != 0) {
          continue;
        }
        seen.insert(*b);
        if (seen.size() > cap) {
          throw CapExceeded();
        }
        queue.push_back(std::move(*b));
      }
    }
    return seen;
  }

  inline bool exchange_equivalent(CellTable const& t,
                                  SlicedTwoArrow const& a,
                                  SlicedTwoArrow const& b,
                                  std::size_t cap) {
    if (a.start != b.start || a.size() != b.size()) {
      return false;
    }
    return exchange_class(t, a, cap).count(b) != 0;
  }

  // Relation families identifying 2-arrows with the same projection.
  enum class Family {
    self_swap,     // tau(x,x) against the identity on x.x
    involution,    // tau(y,x) after tau(x,y) against the identity on x.y
    yang_baxter,   // the two reduced crossings of three wires
    naturality     // a rule cell sliding across a wire it does not touch
  };

  inline char const* to_string(Family f) {
    switch (f) {
      case Family::self_swap: return "self-swap";
      case Family::involution: return "involution";
      case Family::yang_baxter: return "yang-baxter";
      case Family::naturality: return "naturality";
    }
    return "?";
  }

  struct RelationInstance {
    Family         family;
    SlicedTwoArrow lhs;
    SlicedTwoArrow rhs;
  };

  namespace detail {
    inline SlicedTwoArrow run(CellTable const& t,
                              Word start,
                              std::vector<std::pair<std::size_t, Symbol>> const& moves) {
      SlicedTwoArrow a{start, {}};
      Word           cur = std::move(start);
      for (auto const& [pos, cell] : moves) {
        a.slices.push_back(make_slice(t, cur, pos, cell));
        cur = slice_output(t, a.slices.back());
      }
      return a;
    }

    // Moves the letter at `from` to `to` by adjacent swaps.
    inline std::optional<std::vector<std::pair<std::size_t, Symbol>>>
    carry(TwoPolygraph const& g, Word& w, std::size_t from, std::size_t to) {
      std::vector<std::pair<std::size_t, Symbol>> moves;
      while (from > to) {
        auto c = g.swap(w[from - 1], w[from]);
        if (!c) {
          return std::nullopt;
        }
        moves.emplace_back(from - 1, *c);
        std::swap(w[from - 1], w[from]);
        --from;
      }
      while (from < to) {
        auto c = g.swap(w[from], w[from + 1]);
        if (!c) {
          return std::nullopt;
        }
        moves.emplace_back(from, *c);
        std::swap(w[from], w[from + 1]);
        ++from;
      }
      return moves;
    }
  }  // namespace detail

  // Every instance of the four families over the 1-cells and rules of g,
  // skipping those needing a permutation cell g lacks.
  inline std::vector<RelationInstance> relation_instances(TwoPolygraph const& g) {
    std::vector<RelationInstance> out;
    auto const&                   t = g.table();
    std::size_t const             n = t.one_cells().size();
    for (std::size_t i = 0; i < n; ++i) {
      Symbol x(i);
      if (auto c = g.swap(x, x)) {
        out.push_back({Family::self_swap, detail::run(t, {x, x}, {{0, *c}}), {{x, x}, {}}});
      }
      for (std::size_t j = 0; j < n; ++j) {
        Symbol y(j);
        auto   c1 = g.swap(x, y), c2 = g.swap(y, x);
        if (c1 && c2) {
          out.push_back({Family::involution,
                         detail::run(t, {x, y}, {{0, *c1}, {0, *c2}}),
                         {{x, y}, {}}});
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          Symbol a(i), b(j), c(k);
          auto   ab = g.swap(a, b), ac = g.swap(a, c), bc = g.swap(b, c);
          if (!ab || !ac || !bc) {
            continue;
          }
          out.push_back({Family::yang_baxter,
                         detail::run(t, {a, b, c}, {{0, *ab}, {1, *ac}, {0, *bc}}),
                         detail::run(t, {a, b, c}, {{1, *bc}, {0, *ac}, {1, *ab}})});
        }
      }
    }
    for (std::size_t r = 0; r < g.rws().size(); ++r) {
      Symbol      cell = g.rule_cell(Symbol(r));
      Word const& src  = t.source(cell);
      Word const& tgt  = t.target(cell);
      for (std::size_t i = 0; i < n; ++i) {
        Symbol w(i);
        // w enters on the right and leaves on the left.
        {
          Word in  = concat(src, {w});
          Word cur = in;
          auto m1  = detail::carry(g, cur, src.size(), 0);
          Word fin = concat(tgt, {w});
          auto m2  = detail::carry(g, fin, tgt.size(), 0);
          if (m1 && m2) {
            auto lhs = *m1;
            lhs.emplace_back(1, cell);
            std::vector<std::pair<std::size_t, Symbol>> rhs{{0, cell}};
            rhs.insert(rhs.end(), m2->begin(), m2->end());
            out.push_back({Family::naturality, detail::run(t, in, lhs), detail::run(t, in, rhs)});
          }
        }
        // w enters on the left and leaves on the right.
        {
          Word in  = concat({w}, src);
          Word cur = in;
          auto m1  = detail::carry(g, cur, 0, src.size());
          Word fin = concat({w}, tgt);
          auto m2  = detail::carry(g, fin, 0, tgt.size());
          if (m1 && m2) {
            auto lhs = *m1;
            lhs.emplace_back(0, cell);
            std::vector<std::pair<std::size_t, Symbol>> rhs{{1, cell}};
            rhs.insert(rhs.end(), m2->begin(), m2->end());
            out.push_back({Family::naturality, detail::run(t, in, lhs), detail::run(t, in, rhs)});
          }
        }
      }
    }
    return out;
  }

  inline RelationInstance whisker(RelationInstance r, Word const& u, Word const& v) {
    r.lhs = whisker(std::move(r.lhs), u, v);
    r.rhs = whisker(std::move(r.rhs), u, v);
    return r;
  }

  // Both sides must project onto equivalent rewriting paths.
  inline bool lemma_relations_sound(TwoPolygraph const& g,
                                    RelationInstance const& r,
                                    std::size_t cap = 100000) {
    if (r.lhs.start != r.rhs.start || target(g.table(), r.lhs) != target(g.table(), r.rhs)) {
      return false;
    }
    PetriNet net = psi(g.rws());
    return equivalent(net, pi_path(g, r.lhs), pi_path(g, r.rhs), cap);
  }

}  // namespace petri

#endif  // PETRI_POLYGRAPH2_HPP_
