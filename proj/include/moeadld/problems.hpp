#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <string>
#include <string_view>

#include <moeadld/constrained.hpp>
#include <moeadld/dtlz.hpp>
#include <moeadld/problem.hpp>
#include <moeadld/wfg.hpp>

namespace moeadld {

/// Lower-case canonical problem name: "C1-DTLZ1" -> "c1_dtlz1".
inline std::string canonical_problem_name(std::string_view name) {
    std::string s;
    s.reserve(name.size());
    for (char c : name) s.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(c)));
    return s;
}

inline std::unique_ptr<Problem> make_problem(std::string_view name, std::size_t objectives) {
    const std::string s = canonical_problem_name(name);
    if (s.rfind("dtlz", 0) == 0 && s.size() == 5)
        return std::make_unique<Dtlz>(s[4] - '0', objectives);
    if (s.rfind("wfg", 0) == 0 && s.size() == 4)
        return std::make_unique<Wfg>(s[3] - '0', objectives);
    using Kind = ConstrainedDtlz::Kind;
    if (s == "c1_dtlz1") return std::make_unique<ConstrainedDtlz>(Kind::c1_dtlz1, objectives);
    if (s == "c2_dtlz2") return std::make_unique<ConstrainedDtlz>(Kind::c2_dtlz2, objectives);
    if (s == "c3_dtlz1") return std::make_unique<ConstrainedDtlz>(Kind::c3_dtlz1, objectives);
    if (s == "c3_dtlz4") return std::make_unique<ConstrainedDtlz>(Kind::c3_dtlz4, objectives);
    throw std::invalid_argument("unknown problem: " + std::string(name));
}

} // namespace moeadld
