#include "pareto_judge/indicators.hpp"

#include <array>
#include <cctype>

namespace pareto_judge {

namespace {

constexpr std::array<std::pair<Indicator, std::string_view>, 5> kNames{{
    {Indicator::ED, "ED"},
    {Indicator::GD, "GD"},
    {Indicator::HV, "HV"},
    {Indicator::SDR, "SDR"},
    {Indicator::NDR, "NDR"},
}};

} // namespace

std::string_view indicator_name(Indicator ind) noexcept
{
    for (const auto& [value, name] : kNames) {
        if (value == ind) {
            return name;
        }
    }
    return "?";
}

std::optional<Indicator> parse_indicator(std::string_view name) noexcept
{
    for (const auto& [value, canonical] : kNames) {
        if (name.size() == canonical.size()
            && std::equal(name.begin(), name.end(), canonical.begin(), [](char a, char b) {
                   return std::toupper(static_cast<unsigned char>(a)) == b;
               })) {
            return value;
        }
    }
    return std::nullopt;
}

} // namespace pareto_judge
