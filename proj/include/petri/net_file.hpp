// Line-oriented net files and reduction-graph export.
//
//   # comment
//   place x
//   trans alpha : x -> y+z
//   marking init : 2*x+2*y
//
// Places are ordered by declaration unless an explicit order is supplied.

#ifndef PETRI_NET_FILE_HPP_
#define PETRI_NET_FILE_HPP_

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "petri_core.hpp"

namespace petri {

  // Line 0 stands for input that does not come from a file line.
  inline std::string where(std::size_t line) {
    return line == 0 ? std::string() : "line " + std::to_string(line) + ": ";
  }

  struct ParseError : error {
    std::size_t line;
    ParseError(std::size_t l, std::string const& msg)
        : error(where(l) + msg), line(l) {}
  };

  struct UndeclaredSymbol : error {
    std::string name;
    std::size_t line;
    UndeclaredSymbol(std::string n, std::size_t l)
        : error(where(l) + "undeclared place " + n), name(std::move(n)), line(l) {}
  };

  struct NetFile {
    PetriNet                                     net;
    std::vector<std::pair<std::string, Multiset>> markings;

    std::optional<Multiset> marking(std::string const& name) const {
      for (auto const& [n, m] : markings) {
        if (n == name) {
          return m;
        }
      }
      return std::nullopt;
    }

    friend bool operator==(NetFile const&, NetFile const&) = default;
  };

  namespace detail {
    inline std::string_view trim(std::string_view s) {
      auto const ws = " \t\r";
      auto       b  = s.find_first_not_of(ws);
      if (b == std::string_view::npos) {
        return {};
      }
      return s.substr(b, s.find_last_not_of(ws) - b + 1);
    }

    inline bool is_name(std::string_view s) {
      if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
      }
      for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) {
          return false;
        }
      }
      return true;
    }
  }  // namespace detail

  // `0`, or terms `k*name` / `name` joined by `+`; repeated names add up.
  inline Multiset parse_multiset(std::string_view text, Alphabet const& places, std::size_t line = 0) {
    text = detail::trim(text);
    if (text.empty()) {
      throw ParseError(line, "empty multiset, write 0");
    }
    Multiset m;
    if (text == "0") {
      return m;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
      auto        plus = text.find('+', start);
      auto        term = detail::trim(text.substr(start, plus == std::string_view::npos ? plus : plus - start));
      count_type  k    = 1;
      auto        star = term.find('*');
      if (star != std::string_view::npos) {
        auto num = detail::trim(term.substr(0, star));
        auto res = std::from_chars(num.data(), num.data() + num.size(), k);
        if (num.empty() || res.ec != std::errc() || res.ptr != num.data() + num.size() || k == 0) {
          throw ParseError(line, "bad coefficient '" + std::string(num) + "'");
        }
        term = detail::trim(term.substr(star + 1));
      }
      if (!detail::is_name(term)) {
        throw ParseError(line, "bad multiset term '" + std::string(term) + "'");
      }
      if (!places.contains(std::string(term))) {
        throw UndeclaredSymbol(std::string(term), line);
      }
      m.add(places.at(std::string(term)), k);
      if (plus == std::string_view::npos) {
        break;
      }
      start = plus + 1;
    }
    return m;
  }

  // `order`, when non-empty, lists every place once and replaces declaration
  // order.
  inline NetFile parse_net(std::string const& text, std::vector<std::string> const& order = {}) {
    struct Line {
      std::size_t      number;
      std::string_view keyword, rest;
    };
    std::vector<Line>        lines;
    std::vector<std::string> declared;
    std::string_view         all(text);
    std::size_t              number = 0, pos = 0;
    while (pos <= all.size()) {
      auto nl  = all.find('\n', pos);
      auto raw = all.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++number;
      pos = nl == std::string_view::npos ? all.size() + 1 : nl + 1;
      if (auto hash = raw.find('#'); hash != std::string_view::npos) {
        raw = raw.substr(0, hash);
      }
      raw = detail::trim(raw);
      if (raw.empty()) {
        continue;
      }
      auto sp = raw.find_first_of(" \t");
      Line l{number, raw.substr(0, sp), sp == std::string_view::npos ? "" : detail::trim(raw.substr(sp))};
      if (l.keyword == "place") {
        if (!detail::is_name(l.rest)) {
          throw ParseError(number, "bad place name '" + std::string(l.rest) + "'");
        }
        if (std::find(declared.begin(), declared.end(), l.rest) != declared.end()) {
          throw DuplicateName(std::string(l.rest));
        }
        declared.emplace_back(l.rest);
      } else if (l.keyword != "trans" && l.keyword != "marking") {
        throw ParseError(number, "unknown declaration '" + std::string(l.keyword) + "'");
      }
      lines.push_back(l);
    }

    NetFile out;
    if (!order.empty()) {
      for (auto const& n : order) {
        if (std::find(declared.begin(), declared.end(), n) == declared.end()) {
          throw UndeclaredSymbol(n, 0);
        }
      }
      if (order.size() != declared.size()) {
        throw ParseError(0, "the place order must list every place exactly once");
      }
      declared = order;
    }
    for (auto const& n : declared) {
      out.net.add_place(n);
    }
    Alphabet const& places = out.net.places();
    for (auto const& l : lines) {
      if (l.keyword == "place") {
        continue;
      }
      auto colon = l.rest.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(l.number, "expected ':'");
      }
      auto name = detail::trim(l.rest.substr(0, colon));
      auto body = l.rest.substr(colon + 1);
      if (!detail::is_name(name)) {
        throw ParseError(l.number, "bad name '" + std::string(name) + "'");
      }
      if (l.keyword == "trans") {
        auto arrow = body.find("->");
        if (arrow == std::string_view::npos) {
          throw ParseError(l.number, "expected '->'");
        }
        auto pre  = parse_multiset(body.substr(0, arrow), places, l.number);
        auto post = parse_multiset(body.substr(arrow + 2), places, l.number);
        out.net.add_transition(std::string(name), std::move(pre), std::move(post));
      } else {
        if (out.marking(std::string(name))) {
          throw DuplicateName(std::string(name));
        }
        out.markings.emplace_back(std::string(name), parse_multiset(body, places, l.number));
      }
    }
    return out;
  }

  // Canonical form: places, transitions, then markings, each in order.
  inline std::string to_string(NetFile const& f) {
    std::string     out;
    auto const&     p = f.net.places();
    auto const&     t = f.net.transitions();
    for (auto const& n : p.names()) {
      out += "place " + n + "\n";
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
      Symbol s(i);
      out += "trans " + t.name(s) + " : " + to_string(f.net.pre(s), p) + " -> "
             + to_string(f.net.post(s), p) + "\n";
    }
    for (auto const& [n, m] : f.markings) {
      out += "marking " + n + " : " + to_string(m, p) + "\n";
    }
    return out;
  }

  // Nodes in canonical marking order, named n0, n1, ...; edges in arc order.
  inline std::string to_dot(ReductionGraph const& g, PetriNet const& net) {
    std::ostringstream out;
    auto               index = [&](Multiset const& m) {
      return std::lower_bound(g.nodes.begin(), g.nodes.end(), m) - g.nodes.begin();
    };
    out << "digraph reduction {\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      out << "  n" << i << " [label=\"" << to_string(g.nodes[i], net.places()) << "\"];\n";
    }
    for (auto const& a : g.arcs) {
      out << "  n" << index(a.source) << " -> n" << index(target(net, a.step)) << " [label=\""
          << net.transitions().name(a.step.rule) << "\"];\n";
    }
    out << "}\n";
    return out.str();
  }

}  // namespace petri

#endif  // PETRI_NET_FILE_HPP_
