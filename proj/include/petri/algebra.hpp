// Free commutative monoid (multisets) and free monoid (words) over an
// interned, ordered alphabet.

#ifndef PETRI_ALGEBRA_HPP_
#define PETRI_ALGEBRA_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace petri {

  // Base of every error raised by the library.
  struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  // A symbol is its position in the alphabet that interned it, so comparing
  // symbols compares declaration order.
  struct Symbol {
    std::uint32_t id = 0;

    constexpr Symbol() = default;
    constexpr explicit Symbol(std::size_t i) : id(static_cast<std::uint32_t>(i)) {}

    friend constexpr auto operator<=>(Symbol, Symbol) = default;
  };

  struct DuplicateName : error {
    std::string name;
    explicit DuplicateName(std::string n)
        : error("duplicate name: " + n), name(std::move(n)) {}
  };

  struct UnknownSymbol : error {
    std::string name;
    explicit UnknownSymbol(std::string n)
        : error("unknown symbol: " + n), name(std::move(n)) {}
  };

  class Alphabet {
   public:
    Alphabet() = default;
    Alphabet(std::initializer_list<std::string> names) {
      for (auto const& n : names) {
        add(n);
      }
    }

    Symbol add(std::string const& name) {
      if (_index.count(name) != 0) {
        throw DuplicateName(name);
      }
      Symbol s(_names.size());
      _index.emplace(name, s);
      _names.push_back(name);
      return s;
    }

    bool contains(std::string const& name) const {
      return _index.count(name) != 0;
    }

    Symbol at(std::string const& name) const {
      auto it = _index.find(name);
      if (it == _index.end()) {
        throw UnknownSymbol(name);
      }
      return it->second;
    }

    std::string const& name(Symbol s) const {
      return _names.at(s.id);
    }

    std::size_t size() const noexcept {
      return _names.size();
    }

    bool valid(Symbol s) const noexcept {
      return s.id < _names.size();
    }

    std::vector<std::string> const& names() const noexcept {
      return _names;
    }

    Symbol operator[](std::size_t i) const {
      return Symbol(i);
    }

    friend bool operator==(Alphabet const& a, Alphabet const& b) {
      return a._names == b._names;
    }

   private:
    std::vector<std::string>                _names;
    std::unordered_map<std::string, Symbol> _index;
  };

  using count_type = std::uint64_t;

  struct Overflow : error {
    Overflow() : error("multiset count overflow") {}
  };

  struct Underflow : error {
    Symbol symbol;
    explicit Underflow(Symbol s)
        : error("multiset underflow at symbol #" + std::to_string(s.id)),
          symbol(s) {}
  };

  // Element of [X]: finitely many symbols with positive counts.  Zero counts
  // are never stored.
  class Multiset {
   public:
    using container = std::map<Symbol, count_type>;

    Multiset() = default;
    Multiset(std::initializer_list<std::pair<Symbol, count_type>> terms) {
      for (auto const& [s, k] : terms) {
        add(s, k);
      }
    }

    static Multiset of(Symbol s, count_type k = 1) {
      Multiset m;
      m.add(s, k);
      return m;
    }

    count_type count(Symbol s) const {
      auto it = _counts.find(s);
      return it == _counts.end() ? 0 : it->second;
    }

    void add(Symbol s, count_type k = 1) {
      if (k == 0) {
        return;
      }
      auto& c = _counts[s];
      if (__builtin_add_overflow(c, k, &c)) {
        throw Overflow();
      }
    }

    bool empty() const noexcept {
      return _counts.empty();
    }

    // Total number of elements, with multiplicity.
    count_type size() const {
      count_type n = 0;
      for (auto const& [s, k] : _counts) {
        if (__builtin_add_overflow(n, k, &n)) {
          throw Overflow();
        }
      }
      return n;
    }

    container::const_iterator begin() const noexcept {
      return _counts.begin();
    }
    container::const_iterator end() const noexcept {
      return _counts.end();
    }

    friend bool operator==(Multiset const&, Multiset const&) = default;

    // Canonical total order: lexicographic on the (symbol, count) sequence.
    friend bool operator<(Multiset const& a, Multiset const& b) {
      return a._counts < b._counts;
    }

   private:
    friend Multiset ms_sub(Multiset const&, Multiset const&);
    container _counts;
  };

  inline Multiset ms_add(Multiset const& a, Multiset const& b) {
    Multiset r = a;
    for (auto const& [s, k] : b) {
      r.add(s, k);
    }
    return r;
  }

  inline bool ms_leq(Multiset const& a, Multiset const& b) {
    for (auto const& [s, k] : a) {
      if (b.count(s) < k) {
        return false;
      }
    }
    return true;
  }

  inline Multiset ms_sub(Multiset const& a, Multiset const& b) {
    for (auto const& [s, k] : b) {
      if (a.count(s) < k) {
        throw Underflow(s);
      }
    }
    Multiset r = a;
    for (auto const& [s, k] : b) {
      auto it = r._counts.find(s);
      it->second -= k;
      if (it->second == 0) {
        r._counts.erase(it);
      }
    }
    return r;
  }

  inline Multiset operator+(Multiset const& a, Multiset const& b) {
    return ms_add(a, b);
  }

  inline Multiset operator-(Multiset const& a, Multiset const& b) {
    return ms_sub(a, b);
  }

  // Element of the free monoid X*.
  using Word = std::vector<Symbol>;

  inline Word concat(Word a, Word const& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  inline Word concat(Word a, Word const& b, Word const& c) {
    a.insert(a.end(), b.begin(), b.end());
    a.insert(a.end(), c.begin(), c.end());
    return a;
  }

  inline Word subword(Word const& w, std::size_t pos, std::size_t len) {
    return Word(w.begin() + static_cast<std::ptrdiff_t>(pos),
                w.begin() + static_cast<std::ptrdiff_t>(pos + len));
  }

  inline Multiset parikh(Word const& w) {
    Multiset m;
    for (Symbol s : w) {
      m.add(s);
    }
    return m;
  }

  // Canonical text forms: `2*x+y`, `0`, `x.x.y`, `~`.
  inline std::string to_string(Multiset const& m, Alphabet const& a) {
    if (m.empty()) {
      return "0";
    }
    std::string out;
    for (auto const& [s, k] : m) {
      if (!out.empty()) {
        out += '+';
      }
      if (k != 1) {
        out += std::to_string(k) + '*';
      }
      out += a.name(s);
    }
    return out;
  }

  inline std::string to_string(Word const& w, Alphabet const& a) {
    if (w.empty()) {
      return "~";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != 0) {
        out += '.';
      }
      out += a.name(w[i]);
    }
    return out;
  }

  // Inverse of the word rendering; `~` and the empty string give the empty
  // word.
  inline Word parse_word(std::string_view text, Alphabet const& a) {
    Word w;
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
      }
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
      }
      return s;
    };
    text = trim(text);
    if (text.empty() || text == "~") {
      return w;
    }
    std::size_t start = 0;
    while (true) {
      auto dot = text.find('.', start);
      auto tok = trim(text.substr(start, dot == std::string_view::npos
                                             ? std::string_view::npos
                                             : dot - start));
      w.push_back(a.at(std::string(tok)));
      if (dot == std::string_view::npos) {
        break;
      }
      start = dot + 1;
    }
    return w;
  }

}  // namespace petri

#endif  // PETRI_ALGEBRA_HPP_
