#pragma once

#include <stdexcept>
#include <string>

namespace ghcat {

enum class ErrKind {
    InputError,
    FloorUnderflow,
    TruncationInsufficient,
    MatchingFailed,
    CompositionUnverified,
    LiftFailed,
    NotEventuallyConstant,
};

inline const char* err_name(ErrKind k) {
    switch (k) {
    case ErrKind::InputError: return "InputError";
    case ErrKind::FloorUnderflow: return "FloorUnderflow";
    case ErrKind::TruncationInsufficient: return "TruncationInsufficient";
    case ErrKind::MatchingFailed: return "MatchingFailed";
    case ErrKind::CompositionUnverified: return "CompositionUnverified";
    case ErrKind::LiftFailed: return "LiftFailed";
    case ErrKind::NotEventuallyConstant: return "NotEventuallyConstant";
    }
    return "?";
}

class Error : public std::runtime_error {
public:
    Error(ErrKind k, const std::string& what)
        : std::runtime_error(std::string(err_name(k)) + ": " + what), kind(k) {}
    ErrKind kind;
};

[[noreturn]] inline void fail(ErrKind k, const std::string& what) { throw Error(k, what); }

} // namespace ghcat
