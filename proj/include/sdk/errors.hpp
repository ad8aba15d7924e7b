#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdk {

enum class Errc {
    DivisionByZero,
    ZeroDivisor,
    FieldMismatch,
    InvalidField,
    NotTotallyReal,
    InvalidType,
    NoWeylGroup,
    NotBasedAutomorphism,
    NotCMSplit,
    NoComplement,
    WrongModel,
    NotAdmissible,
    OutOfScope,
    NoModel,
    NoHodgeMap,
    Unsupported,
    NotExtendable,
    Singular,
    ParseError,
    InternalError,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace sdk
