#include "sdk/errors.hpp"

namespace sdk {

std::string_view errc_name(Errc code)
{
    switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ZeroDivisor: return "ZeroDivisor";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::InvalidField: return "InvalidField";
    case Errc::NotTotallyReal: return "NotTotallyReal";
    case Errc::InvalidType: return "InvalidType";
    case Errc::NoWeylGroup: return "NoWeylGroup";
    case Errc::NotBasedAutomorphism: return "NotBasedAutomorphism";
    case Errc::NotCMSplit: return "NotCMSplit";
    case Errc::NoComplement: return "NoComplement";
    case Errc::WrongModel: return "WrongModel";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::OutOfScope: return "OutOfScope";
    case Errc::NoModel: return "NoModel";
    case Errc::NoHodgeMap: return "NoHodgeMap";
    case Errc::Unsupported: return "Unsupported";
    case Errc::NotExtendable: return "NotExtendable";
    case Errc::Singular: return "Singular";
    case Errc::ParseError: return "ParseError";
    case Errc::InternalError: return "InternalError";
    }
    return "Unknown";
}

}  // namespace sdk
