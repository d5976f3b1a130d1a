#pragma once

#include <optional>
#include <string>

namespace stasurf {

enum class Verdict { Pass, Fail, HypothesisNotMet, Contradiction, Inapplicable };

std::string to_string(Verdict v);

/// Verdicts that let a run exit successfully.
inline bool acceptable(Verdict v) {
    return v == Verdict::Pass || v == Verdict::HypothesisNotMet || v == Verdict::Inapplicable;
}

/// A nonnegative count that may be infinite.
class ExtendedCount {
public:
    static ExtendedCount finite(int n) { return ExtendedCount(n); }
    static ExtendedCount infinite() { return ExtendedCount(); }

    bool is_infinite() const { return !n_.has_value(); }
    /// Throws std::logic_error when infinite.
    int value() const;
    std::string to_string() const { return n_ ? std::to_string(*n_) : "inf"; }

    friend bool operator==(const ExtendedCount&, const ExtendedCount&) = default;

private:
    ExtendedCount() = default;
    explicit ExtendedCount(int n) : n_(n) {}
    std::optional<int> n_;
};

} // namespace stasurf
