// petri: command-line front end.
//
//   petri --net FILE [--order p,q,...] <command> [options]
//
// Exit status: 0 success, 1 domain error, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "petri/circuit_nf.hpp"
#include "petri/net_file.hpp"
#include "petri/polygraph3.hpp"

using namespace petri;

namespace {
  struct UsageError : error {
    using error::error;
  };

  std::string read_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw UsageError("cannot read " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  std::vector<std::string> split(std::string const& s, char sep) {
    std::vector<std::string> out;
    std::stringstream        in(s);
    std::string              item;
    while (std::getline(in, item, sep)) {
      out.push_back(std::string(detail::trim(item)));
    }
    return out;
  }

  // A marking is either the name of one declared in the file or a literal.
  Multiset marking(NetFile const& f, std::string const& text) {
    if (auto m = f.marking(text)) {
      return *m;
    }
    return parse_multiset(text, f.net.places());
  }

  std::vector<Symbol> sequence(NetFile const& f, std::string const& text) {
    std::vector<Symbol> out;
    if (detail::trim(text).empty()) {
      return out;
    }
    for (auto const& n : split(text, ',')) {
      out.push_back(f.net.transitions().at(n));
    }
    return out;
  }

  std::string to_string(NetFile const& f, NetPath const& p) {
    auto const& pl = f.net.places();
    std::string out = "start " + petri::to_string(p.start, pl) + "\n";
    for (auto const& s : p.steps) {
      out += petri::to_string(s.context, pl) + " | " + f.net.transitions().name(s.rule) + "\n";
    }
    return out + "target " + petri::to_string(target(f.net, p), pl) + "\n";
  }

  std::string seq_string(NetFile const& f, NetPath const& p) {
    std::string out;
    for (auto const& s : p.steps) {
      out += (out.empty() ? "" : ",") + f.net.transitions().name(s.rule);
    }
    return out.empty() ? "~" : out;
  }

  struct Check {
    std::vector<std::string> lines;
    bool                     ok = true;

    void expect(bool cond, std::string const& what) {
      lines.push_back(std::string(cond ? "ok   " : "bad  ") + what);
      ok = ok && cond;
    }
  };

  Check check_comm(NetFile const& f, Multiset const& m0, Limits lim) {
    Check c;
    auto  rws = phi(f.net);
    c.expect(psi(rws) == f.net, "psi(phi(net)) = net");
    c.expect(phi(psi(rws)) == rws, "phi(psi(system)) = system");
    auto r = iso_check(f.net, m0, lim);
    c.expect(r.ok(), "reduction graphs agree: " + std::to_string(r.nodes) + " markings, "
                         + std::to_string(r.arcs) + " arrows, " + std::to_string(r.squares)
                         + " squares");
    for (auto const& m : r.mismatches) {
      c.lines.push_back("     " + m);
    }
    return c;
  }

  Check check_2d(NetFile const& f, Multiset const& m0, std::size_t len) {
    Check c;
    auto  g     = sigma2(phi(f.net));
    auto  paths = paths_up_to(f.net, m0, len);
    bool  all   = true;
    for (auto const& p : paths) {
      all = all && pi_path(g, lift_path(g, p)) == p;
    }
    c.expect(all, "pi(lift(p)) = p on " + std::to_string(paths.size()) + " paths");
    auto        ext  = sigma2(phi(f.net), true);
    auto        rels = relation_instances(ext);
    std::size_t good = 0;
    for (auto const& r : rels) {
      good += lemma_relations_sound(ext, r);
    }
    c.expect(good == rels.size(), "permutation relations sound: " + std::to_string(good) + "/"
                                      + std::to_string(rels.size()));
    return c;
  }

  Check check_3d(NetFile const& f, Multiset const& m0, Limits lim, std::size_t len) {
    Check c;
    auto  rws = phi(f.net);
    auto  p   = sigma3(rws);
    c.expect(nr(p) == rws && sigma3(nr(p)) == p, "nr(sigma3(system)) = system");
    auto g   = reach(f.net, m0, lim);
    bool inv = true;
    for (auto const& a : g.arcs) {
      auto t = to_triple(p, a.step);
      inv    = inv && to_step(p, t) == a.step && to_triple(p, to_step(p, t)) == t;
    }
    c.expect(inv, "arrows correspond on " + std::to_string(g.arcs.size()) + " arrows");
    bool        same  = true;
    auto        paths = paths_up_to(f.net, m0, len);
    for (auto const& q : paths) {
      same = same
             && exchange3_class(p, to_triples(p, q), 100000).size()
                    == equiv_class(f.net, q, 100000).size();
    }
    c.expect(same, "class sizes agree on " + std::to_string(paths.size()) + " paths");
    return c;
  }

  Check check_eh(NetFile const& f, Multiset const& m0, Limits lim) {
    Check c;
    auto  g    = reach(f.net, m0, lim);
    auto  cell = [](Multiset const& m) { return Composite::from(m); };
    bool  ok   = true;
    for (auto const& a : g.nodes) {
      for (auto const& b : g.nodes) {
        ok = ok && eckmann_hilton_probe(cell(a), cell(b))
             && (cell(a).evaluate() == cell(b).evaluate()) == (a == b);
      }
    }
    c.expect(ok, "composites commute and decompose uniquely on "
                     + std::to_string(g.nodes.size() * g.nodes.size()) + " pairs");
    return c;
  }
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Petri nets and their rewriting presentations"};
  app.require_subcommand(1);
  std::string net_path, order;
  app.add_option("--net", net_path, "net file")->required();
  app.add_option("--order", order, "place order, comma separated");

  std::string m_text, seq, seq1, seq2, dot_path, to, circuit, thm;
  std::size_t depth = 16, states = 10000, cap = 100000, fuel = 10000, len = 4;

  auto* show = app.add_subcommand("show", "print the net in canonical form");
  auto* fire = app.add_subcommand("fire", "fire a sequence of transitions");
  fire->add_option("--marking", m_text)->required();
  fire->add_option("--seq", seq)->required();
  auto* reach_cmd = app.add_subcommand("reach", "explore the reduction graph");
  reach_cmd->add_option("--marking", m_text)->required();
  reach_cmd->add_option("--max-depth", depth);
  reach_cmd->add_option("--max-states", states);
  reach_cmd->add_option("--dot", dot_path, "write DOT to PATH, - for stdout");
  auto* equiv = app.add_subcommand("equiv", "decide path equivalence");
  equiv->add_option("--marking", m_text)->required();
  equiv->add_option("--seq1", seq1)->required();
  equiv->add_option("--seq2", seq2)->required();
  equiv->add_option("--cap", cap);
  auto* cls = app.add_subcommand("class", "list the equivalence class of a path");
  cls->add_option("--marking", m_text)->required();
  cls->add_option("--seq", seq)->required();
  cls->add_option("--cap", cap);
  auto* translate = app.add_subcommand("translate", "print another presentation");
  translate->add_option("--to", to)->required()->check(CLI::IsMember({"comm", "poly2", "poly3"}));
  auto* lift = app.add_subcommand("lift", "lift a path to sliced circuits");
  lift->add_option("--marking", m_text)->required();
  lift->add_option("--seq", seq)->required();
  auto* pi = app.add_subcommand("pi", "project a sliced circuit to a path");
  pi->add_option("--circuit", circuit)->required();
  auto* norm = app.add_subcommand("normalize", "normal form of a duplication circuit");
  norm->add_option("--circuit", circuit)->required();
  norm->add_option("--fuel", fuel);
  auto* check = app.add_subcommand("check", "run a correspondence suite on the net");
  check->add_option("--thm", thm)->required()->check(CLI::IsMember({"comm", "2d", "3d", "eh"}));
  check->add_option("--marking", m_text, "default: the first marking in the file");
  check->add_option("--max-depth", depth, "exploration depth")->default_val(4);
  check->add_option("--length", len, "longest path enumerated");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    NetFile f = parse_net(read_file(net_path), order.empty() ? std::vector<std::string>{} : split(order, ','));
    auto const& places = f.net.places();
    auto&       out    = std::cout;

    if (*show) {
      out << to_string(f);
    } else if (*fire) {
      Multiset m = marking(f, m_text);
      for (Symbol t : sequence(f, seq)) {
        auto [next, step] = petri::fire(f.net, m, t);
        out << f.net.transitions().name(t) << ": " << petri::to_string(m, places) << " -> "
            << petri::to_string(next, places) << "\n";
        m = std::move(next);
      }
      out << "final " << petri::to_string(m, places) << "\n";
    } else if (*reach_cmd) {
      auto g = reach(f.net, marking(f, m_text), {depth, states});
      out << g.nodes.size() << " markings, " << g.arcs.size() << " arrows"
          << (g.truncated ? " (truncated)" : "") << "\n";
      for (auto const& n : g.nodes) {
        out << "  " << petri::to_string(n, places) << "\n";
      }
      for (auto const& a : g.arcs) {
        out << "  " << petri::to_string(a.source, places) << " --"
            << f.net.transitions().name(a.step.rule) << "--> "
            << petri::to_string(target(f.net, a.step), places) << "\n";
      }
      if (dot_path == "-") {
        out << to_dot(g, f.net);
      } else if (!dot_path.empty()) {
        std::ofstream d(dot_path);
        if (!(d << to_dot(g, f.net))) {
          throw UsageError("cannot write " + dot_path);
        }
      }
    } else if (*equiv) {
      Multiset m = marking(f, m_text);
      auto     a = replay(f.net, m, sequence(f, seq1));
      auto     b = replay(f.net, m, sequence(f, seq2));
      out << (equivalent(f.net, a, b, cap) ? "equivalent" : "not equivalent") << "\n";
    } else if (*cls) {
      auto c = equiv_class(f.net, replay(f.net, marking(f, m_text), sequence(f, seq)), cap);
      out << "class size " << c.size() << "\n";
      for (auto const& p : c) {
        out << "  " << seq_string(f, p) << "\n";
      }
    } else if (*translate) {
      auto rws = phi(f.net);
      if (to == "comm") {
        out << "symbols";
        for (auto const& n : rws.alphabet().names()) {
          out << " " << n;
        }
        out << "\n";
        for (std::size_t r = 0; r < rws.size(); ++r) {
          out << "rule " << rws.rule_names().name(Symbol(r)) << " : "
              << petri::to_string(rws.rule(Symbol(r)).source, places) << " -> "
              << petri::to_string(rws.rule(Symbol(r)).target, places) << "\n";
        }
      } else if (to == "poly2") {
        auto        g = sigma2(rws);
        auto const& t = g.table();
        for (std::size_t c = 0; c < t.cells().size(); ++c) {
          out << "cell " << t.cells().name(Symbol(c)) << " : "
              << petri::to_string(t.source(Symbol(c)), places) << " => "
              << petri::to_string(t.target(Symbol(c)), places) << "\n";
        }
      } else {
        auto p = sigma3(rws);
        out << "1-cells " << p.one_cells.size() << "\n2-cells";
        for (auto const& n : p.two_cells.names()) {
          out << " " << n;
        }
        out << "\n";
        for (std::size_t c = 0; c < p.three_cells.size(); ++c) {
          out << "3-cell " << p.three_cell_names.name(Symbol(c)) << " : "
              << petri::to_string(p.three_cells[c].source, places) << " => "
              << petri::to_string(p.three_cells[c].target, places) << "\n";
        }
      }
    } else if (*lift) {
      auto g = sigma2(phi(f.net));
      auto p = replay(f.net, marking(f, m_text), sequence(f, seq));
      auto a = lift_path(g, p);
      out << petri::to_string(a, g.table());
      bool back = pi_path(g, a) == p;
      out << "projection round trip: " << (back ? "ok" : "broken") << "\n";
      return back ? 0 : 1;
    } else if (*pi) {
      auto g = sigma2(phi(f.net), true);
      out << to_string(f, pi_path(g, parse_arrow(read_file(circuit), g.table())));
    } else if (*norm) {
      auto           bar = sigma_bar(phi(f.net));
      NormalizeStats st;
      auto           n = normalize(bar, parse_arrow(read_file(circuit), bar.table()), fuel, &st);
      out << petri::to_string(n, bar.table()) << "steps " << st.steps << "\n";
    } else if (*check) {
      Multiset m0;
      if (!m_text.empty()) {
        m0 = marking(f, m_text);
      } else if (!f.markings.empty()) {
        m0 = f.markings.front().second;
      }
      Limits lim{depth, 10000};
      Check  c = thm == "comm" ? check_comm(f, m0, lim)
                 : thm == "2d" ? check_2d(f, m0, len)
                 : thm == "3d" ? check_3d(f, m0, lim, len)
                               : check_eh(f, m0, lim);
      for (auto const& l : c.lines) {
        out << l << "\n";
      }
      return c.ok ? 0 : 1;
    }
    return 0;
  } catch (ParseError const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (UndeclaredSymbol const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (DuplicateName const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (UnknownSymbol const& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (UsageError const& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
