#pragma once

#include <pvote/parse.hpp>

namespace pvote::test {

// Worked examples, built through the margins file format.

inline MarginMatrix e3() {
    return std::get<MarginMatrix>(parse_election("candidates: A B C\n"
                                                 "margins:\n"
                                                 "A B -1\n"
                                                 "A C 2\n"
                                                 "B C -3\n"));
}

inline MarginMatrix e4a() {
    return std::get<MarginMatrix>(parse_election("candidates: A B C D\n"
                                                 "margins:\n"
                                                 "A B 1\n"
                                                 "A C 11\n"
                                                 "A D -7\n"
                                                 "B C 5\n"
                                                 "B D 3\n"
                                                 "C D 9\n"));
}

inline MarginMatrix e4b() {
    return std::get<MarginMatrix>(parse_election("candidates: C A B D\n"
                                                 "margins:\n"
                                                 "C A 1\n"
                                                 "C B -2\n"
                                                 "C D 5\n"
                                                 "A B 6\n"
                                                 "A D -3\n"
                                                 "B D 4\n"));
}

inline Ordering by_names(const MarginMatrix& m, const std::string& letters) {
    std::vector<std::string> names;
    for (char c : letters) names.emplace_back(1, c);
    return ordering_from_names(m.names(), names);
}

inline std::string letters(const MarginMatrix& m, const Ordering& o) { return format_ordering(o, m.names(), ""); }

} // namespace pvote::test
