#pragma once

// InvariantBound: a (lower, upper) pair in (0, +inf] with per-side
// provenance tags. "unknown" on the upper side means no case in scope
// bounds it; it is distinct from +inf, which is a definite value.

#include "lagflux/rational.hpp"

#include <optional>
#include <string>

namespace lagflux {

// Provenance tags carried on every bound side; also the exact strings a
// ResultReport prints next to each value.
namespace tags {
inline constexpr const char* shape_formula = "Thm-1.2";
inline constexpr const char* weakly_exact = "Thm-2.1";
inline constexpr const char* surface_area = "Thm-2.2";
inline constexpr const char* surface_nonsep = "Thm-2.3";
inline constexpr const char* toric_lower = "Thm-2.4";
inline constexpr const char* toric_interior = "Rem-2.5";
inline constexpr const char* disk_count_2d = "Thm-2.6";
inline constexpr const char* split_case_a = "Thm-2.15-A";
inline constexpr const char* split_case_b = "Thm-2.15-B";
inline constexpr const char* split_case_c = "Thm-2.15-C";
inline constexpr const char* split_cor_c = "Cor-2.8-C";
inline constexpr const char* split_cor_d = "Cor-2.8-D";
inline constexpr const char* split_cor_e = "Cor-2.8-E";
inline constexpr const char* monotone_lower = "Cor-2.9";
inline constexpr const char* disk_count_general = "Thm-2.11";
inline constexpr const char* chekanov_lower = "Thm-2.13-A";
inline constexpr const char* chekanov_inf = "Thm-2.13-B";
inline constexpr const char* cpn_upper = "Cor-2.18";
inline constexpr const char* cpn_exact = "Cor-2.19";
inline constexpr const char* s2s2_upper = "Cor-2.21";
inline constexpr const char* sandwich = "Thm-1.3";
}  // namespace tags

class InvariantBound {
  public:
    // upper: engaged optional = known value (finite or inf); nullopt = unknown.
    static InvariantBound exact(ExtRat v, std::string source) {
        InvariantBound b;
        b.lower_ = v;
        b.upper_ = v;
        b.lower_source_ = source;
        b.upper_source_ = std::move(source);
        return b;
    }
    static InvariantBound exact(ExtRat v, std::string lower_source, std::string upper_source) {
        InvariantBound b;
        b.lower_ = v;
        b.upper_ = v;
        b.lower_source_ = std::move(lower_source);
        b.upper_source_ = std::move(upper_source);
        return b;
    }
    static InvariantBound lower_only(ExtRat lo, std::string source) {
        InvariantBound b;
        b.lower_ = lo;
        b.lower_source_ = std::move(source);
        return b;
    }
    static InvariantBound bracket(ExtRat lo, std::string lo_source, ExtRat up,
                                  std::string up_source) {
        if (up < lo) throw std::logic_error("invariant bound with upper < lower");
        InvariantBound b;
        b.lower_ = lo;
        b.upper_ = up;
        b.lower_source_ = std::move(lo_source);
        b.upper_source_ = std::move(up_source);
        return b;
    }
    static InvariantBound unknown() { return InvariantBound(); }

    bool has_lower() const { return lower_.has_value(); }
    bool has_upper() const { return upper_.has_value(); }
    const ExtRat& lower() const { return lower_.value(); }
    const ExtRat& upper() const { return upper_.value(); }
    bool is_exact() const { return lower_ && upper_ && *lower_ == *upper_; }
    const std::string& lower_source() const { return lower_source_; }
    const std::string& upper_source() const { return upper_source_; }

    std::string str() const {
        if (is_exact()) return "exact " + lower_->str() + " [" + lower_source_ + "]";
        std::string s;
        if (lower_)
            s += "lower " + lower_->str() + " [" + lower_source_ + "]";
        else
            s += "lower unknown";
        s += ", ";
        if (upper_)
            s += "upper " + upper_->str() + " [" + upper_source_ + "]";
        else
            s += "upper unknown";
        return s;
    }

  private:
    std::optional<ExtRat> lower_;
    std::optional<ExtRat> upper_;
    std::string lower_source_;
    std::string upper_source_;
};

}  // namespace lagflux
