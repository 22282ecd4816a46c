#include "relscore/types.hpp"

#include <ostream>
#include <stdexcept>

namespace relscore {

OutcomeLabel::OutcomeLabel(std::string name) : name_(std::move(name)) {
    if (name_.empty()) throw std::invalid_argument("outcome label must be non-empty");
}

std::ostream& operator<<(std::ostream& os, const OutcomeLabel& label) {
    return os << label.str();
}

void RsParams::validate() const {
    if (alpha < 0.0 || beta < 0.0)
        throw std::invalid_argument("rs params: alpha and beta must be non-negative");
    if (alpha + beta <= 0.0)
        throw std::invalid_argument("rs params: alpha + beta must be positive");
}

std::string_view case_name(CaseLabel c) {
    switch (c) {
        case CaseLabel::Case1: return "Case1";
        case CaseLabel::Case2: return "Case2";
        case CaseLabel::Case3: return "Case3";
        case CaseLabel::Case4: return "Case4";
        case CaseLabel::Case5: return "Case5";
        case CaseLabel::Other: return "CaseOther";
    }
    throw std::invalid_argument("unknown case label value");
}

std::string_view case_description(CaseLabel c) {
    switch (c) {
        case CaseLabel::Case1: return "HighlyRelevant";
        case CaseLabel::Case2: return "ModeratelyRelevant";
        case CaseLabel::Case3: return "Relevant";
        case CaseLabel::Case4: return "LessRelevant";
        case CaseLabel::Case5: return "Irrelevant";
        case CaseLabel::Other: return "Unclassified";
    }
    throw std::invalid_argument("unknown case label value");
}

CaseLabel case_from_name(std::string_view name) {
    for (CaseLabel c : kAllCases) {
        if (case_name(c) == name) return c;
    }
    throw std::invalid_argument("unknown case label '" + std::string(name) + "'");
}

}  // namespace relscore
