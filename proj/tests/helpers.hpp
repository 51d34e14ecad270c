#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "vknot/diagram.hpp"

#ifndef VKNOT_DATA_DIR
#define VKNOT_DATA_DIR "data"
#endif

namespace testutil {

inline std::string read_file(const std::string& name) {
    std::ifstream in(std::string(VKNOT_DATA_DIR) + "/" + name);
    if (!in) throw vknot::Error("cannot open data file " + name);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline std::string first_line(const std::string& name) {
    auto lines = vknot::read_diagram_lines(read_file(name));
    if (lines.empty()) throw vknot::Error("no diagram in " + name);
    return lines.front();
}

inline vknot::SignedGaussDiagram load_knot(const std::string& name) {
    return vknot::parse_knot(first_line(name));
}

inline vknot::SingularVirtualString load_singular(const std::string& name) {
    return vknot::parse_singular_string(first_line(name));
}

}  // namespace testutil
