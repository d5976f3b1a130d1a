#include "stasurf/verdict.hpp"

#include <stdexcept>

namespace stasurf {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::HypothesisNotMet: return "HYPOTHESIS_NOT_MET";
    case Verdict::Contradiction: return "CONTRADICTION";
    case Verdict::Inapplicable: return "INAPPLICABLE";
    }
    return "?";
}

int ExtendedCount::value() const {
    if (!n_)
        throw std::logic_error("ExtendedCount::value: infinite count");
    return *n_;
}

} // namespace stasurf
