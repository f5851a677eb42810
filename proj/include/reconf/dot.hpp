#pragma once

#include <sstream>
#include <string>

#include "reconf/automaton.hpp"

namespace reconf {

/// GraphViz rendering. States keep their breadth-first numbers, so equal
/// automata always produce identical text. Back-edges are dashed.
inline std::string emit_dot(const automaton& a, const std::string& graph_name = "path") {
  std::ostringstream out;
  out << "digraph " << graph_name << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  out << "  start [shape=point];\n";
  for (std::size_t q = 0; q < a.num_states(); ++q) out << "  q" << q << ";\n";
  out << "  start -> q" << a.initial() << ";\n";
  for (const auto& t : a.transitions()) {
    out << "  q" << t.from << " -> q" << t.to << " [label=\"" << t.label << "\"";
    if (t.back_edge) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace reconf
