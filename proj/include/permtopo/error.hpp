#pragma once

#include <stdexcept>
#include <string>

namespace permtopo {

enum class ErrorKind {
    invalid_input,
    out_of_range,
    not_comparable,
    rank_too_small,
    invalid_partition,
    precondition,
    alphabet_mismatch,
    non_maximal_chain,
    too_large,
    bound_exceeded,
    timeout,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_input: return "invalid-input";
        case ErrorKind::out_of_range: return "out-of-range";
        case ErrorKind::not_comparable: return "not-comparable";
        case ErrorKind::rank_too_small: return "rank-too-small";
        case ErrorKind::invalid_partition: return "invalid-partition";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::alphabet_mismatch: return "alphabet-mismatch";
        case ErrorKind::non_maximal_chain: return "non-maximal-chain";
        case ErrorKind::too_large: return "too-large";
        case ErrorKind::bound_exceeded: return "bound-exceeded";
        case ErrorKind::timeout: return "timeout";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace permtopo
