#include "sdk/quadext.hpp"

#include <cmath>

namespace sdk {

CMExtension::CMExtension(NumberField base, FieldElement delta) : base_(std::move(base)), delta_(std::move(delta))
{
    if (delta_.field() != base_)
        throw Error(Errc::FieldMismatch, "delta must lie in the base field");
    if (!base_.totally_real())
        throw Error(Errc::NotTotallyReal, "CM base field must be totally real");
    if (!totality_check(base_, delta_, TotalityMode::TotallyNegative))
        throw Error(Errc::InvalidField, "delta = " + delta_.to_string() + " is not totally negative");
}

std::complex<double> CMExtension::embed(const KElement& z, const RealEmbedding& v) const
{
    double s = std::sqrt(-v.value(delta_));
    return {v.value(z.a()), v.value(z.b()) * s};
}

}  // namespace sdk
