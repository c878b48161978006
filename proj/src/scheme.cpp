// SPDX-License-Identifier: Apache-2.0
#include "wetfbl/scheme.hpp"

#include <string>

#include "wetfbl/error.hpp"

namespace wetfbl {

void SchemeConfig::validate() const
{
    auto require_positive = [](int value, char const* name) {
        if (value < 1)
            throw ConfigError(std::string(name) + " must be >= 1, got " + std::to_string(value));
    };
    require_positive(v, "v");
    require_positive(u, "u");
    require_positive(k, "k");
    if (is_relay())
    {
        require_positive(n1, "n1");
        require_positive(n2, "n2");
        if (kind == SchemeKind::relay_mrc && n1 != n2)
            throw ConfigError("MRC combining requires n1 == n2");
    }
    else
    {
        require_positive(n, "n");
    }
}

std::string_view to_string(SchemeKind kind)
{
    switch (kind)
    {
        case SchemeKind::direct: return "dc";
        case SchemeKind::relay_sc: return "relay_sc";
        case SchemeKind::relay_mrc: return "relay_mrc";
    }
    return "?";
}

std::string_view to_string(CsiMode mode)
{
    return mode == CsiMode::perfect ? "perfect" : "imperfect";
}

SchemeKind parse_scheme_kind(std::string_view text)
{
    if (text == "dc")
        return SchemeKind::direct;
    if (text == "relay_sc")
        return SchemeKind::relay_sc;
    if (text == "relay_mrc")
        return SchemeKind::relay_mrc;
    throw ConfigError("unknown scheme kind '" + std::string(text)
                      + "' (expected dc, relay_sc or relay_mrc)");
}

CsiMode parse_csi_mode(std::string_view text)
{
    if (text == "perfect")
        return CsiMode::perfect;
    if (text == "imperfect")
        return CsiMode::imperfect;
    throw ConfigError("unknown csi mode '" + std::string(text) + "' (expected perfect or imperfect)");
}

}  // namespace wetfbl
