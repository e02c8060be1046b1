#include "leff/dot.hpp"

#include <sstream>

namespace leff {

namespace {

std::string escaped(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string poset_to_dot(const FinitePoset& p) {
  std::ostringstream os;
  os << "digraph poset {\n  rankdir=BT;\n  node [shape=box];\n";
  for (int x = 0; x < p.size(); ++x)
    os << "  n" << x << " [label=\"" << escaped(p.label(x)) << "\"];\n";
  for (auto [x, y] : hasse_cover(p)) os << "  n" << x << " -> n" << y << ";\n";
  os << "}\n";
  return os.str();
}

std::string trace_to_dot(const CascadeTrace& trace, const std::vector<std::string>& ground) {
  std::ostringstream os;
  os << "digraph cascade {\n  rankdir=LR;\n  node [shape=box];\n";
  for (std::size_t m = 0; m < trace.states.size(); ++m)
    os << "  t" << m << " [label=\"t=" << m << ": "
       << escaped(subset_label(trace.states[m], ground)) << "\"];\n";
  for (std::size_t m = 0; m + 1 < trace.states.size(); ++m)
    os << "  t" << m << " -> t" << m + 1 << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace leff
