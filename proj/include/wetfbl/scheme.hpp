// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

namespace wetfbl {

enum class SchemeKind
{
    direct,     //!< source -> destination only
    relay_sc,   //!< decode-and-forward relay, selection combining
    relay_mrc,  //!< decode-and-forward relay, maximal-ratio combining
};

enum class CsiMode
{
    perfect,
    imperfect,
};

/*!
 * Channel-use allocation of one transmission round.
 *
 * For the direct scheme only v, u, n are used; relay schemes use v, u, n1,
 * n2 with nu = 2u + n1 + n2.
 */
struct SchemeConfig
{
    SchemeKind kind = SchemeKind::direct;
    int v = 1000;
    int u = 1;
    int n = 500;
    int n1 = 250;
    int n2 = 250;
    int k = 256;
    CsiMode csi = CsiMode::perfect;

    bool is_relay() const { return kind != SchemeKind::direct; }
    //! Blocklength of the source's data phase.
    int source_blocklength() const { return is_relay() ? n1 : n; }
    int nu() const { return 2 * u + n1 + n2; }
    //! Round delay in channel uses.
    int delay() const { return is_relay() ? v + nu() : v + u + n; }
    double beta() const { return double(v) / delay(); }

    //! Throws ConfigError on inconsistent lengths.
    void validate() const;

    friend bool operator==(SchemeConfig const&, SchemeConfig const&) = default;
};

//! One joint realization of the five Exp(1) power gains.
struct ChannelDraw
{
    double g_ds = 0;
    double g_sd = 0;
    double g_dr = 0;
    double g_rd = 0;
    double g_sr = 0;
};

std::string_view to_string(SchemeKind kind);
std::string_view to_string(CsiMode mode);
SchemeKind parse_scheme_kind(std::string_view text);
CsiMode parse_csi_mode(std::string_view text);

}  // namespace wetfbl
