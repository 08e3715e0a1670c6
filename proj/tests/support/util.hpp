#pragma once

#include "cotv/core.hpp"

#include <doctest.h>

#include <initializer_list>
#include <string>
#include <vector>

#define CHECK_ERROR_CODE(expr, ec)                                                         \
    do {                                                                                   \
        try {                                                                              \
            (void)(expr);                                                                  \
            FAIL_CHECK("expected " #ec " from " #expr);                                    \
        }                                                                                  \
        catch (const cotv::Error& e_) {                                                    \
            CHECK_MESSAGE(e_.code() == (ec), "got " << std::string(cotv::error_code_name(e_.code())) << ": " << e_.what()); \
        }                                                                                  \
    } while (false)

namespace cotv::testing {

inline PrefixInstance pz(std::uint32_t problem, std::initializer_list<int> steps)
{
    return PrefixInstance{ ProblemId{ problem }, make_trace(steps) };
}

inline CotInstance cz(std::uint32_t problem, std::initializer_list<int> steps)
{
    return CotInstance{ ProblemId{ problem }, make_trace(steps) };
}

// Single-problem class over Σ = {0..sigma-1}; rows[v][i] judges universe[i].
inline ClassPtr make_class(int sigma, int L, const std::vector<std::vector<int>>& universe,
                           const std::vector<std::vector<bool>>& rows)
{
    VerifierClass::Tables t;
    for (int s = 0; s < sigma; ++s)
        t.sigma.push_back(std::to_string(s));
    t.problems = { "x" };
    t.max_len = L;
    for (const auto& u : universe) {
        Trace tr;
        for (int s : u)
            tr.push_back(Token{ static_cast<std::uint16_t>(s) });
        t.universe.push_back(PrefixInstance{ ProblemId{ 0 }, tr });
    }
    t.rows = rows;
    return std::make_shared<const VerifierClass>(std::move(t));
}

} // namespace cotv::testing
