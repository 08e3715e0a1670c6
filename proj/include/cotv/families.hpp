#pragma once

#include "cotv/core.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cotv {

// Σ={0,1}, one verifier per b ∈ {0,1}^L, h_b(τ_{1:l}) = YES iff τ_l = b_l.
// Verifier index is b read as binary with b_1 most significant.
ClassPtr singleton_bitstring_class(int L, ClassCaps caps = {});

// Designated traces are the first n strings of {0,1}^L in lexicographic order;
// verifier i rejects only the full designated trace i.
ClassPtr complement_class(int n, int L, ClassCaps caps = {});

// L=1 over all n_bits-bit vectors; h_i(v) = YES iff v = e_i.
// Token id is the vector read as binary, leftmost bit most significant.
ClassPtr indicator_class(int n_bits, ClassCaps caps = {});

// One verifier per sign pattern; step l is faulty iff literal l is violated.
ClassPtr conjunction_class(int L, ClassCaps caps = {});

using Edge = std::pair<int, int>; // unordered, stored with first < second

// River crossing states are masks over (farmer, chicken, fox, corn), farmer
// in bit 3; start 0000, goal 1111.
struct RiverCrossingLayout
{
    ClassPtr cls;
    int L = 0;
    int start = 0;
    int goal = 15;
    bool full_mode = false;
    std::vector<Edge> legal_edges;  // E, sorted
    std::vector<Edge> revealed;     // E_0, sorted
    std::vector<Edge> hidden_pool;  // edges that index the hidden sets
    // Verifier v's hidden set is {hidden_pool[b] : bit b of v set}.
    [[nodiscard]] std::vector<Edge> hidden_set(std::size_t verifier) const;
};

bool river_state_safe(int state);
std::vector<Edge> river_legal_edges();
std::string river_state_name(int state);

RiverCrossingLayout river_crossing_class(const std::vector<Edge>& revealed, int L, bool full_mode = false,
                                         ClassCaps caps = {});
// Recovers the layout of a class built by river_crossing_class; ClassMismatch otherwise.
RiverCrossingLayout river_crossing_layout_of(const ClassPtr& cls);

// Per-step mini class: each member is an acceptance set over Σ for that step.
struct StepClass
{
    std::vector<std::vector<bool>> members;
};

// H = H_1 × ... × H_L; a length-i prefix is judged by the i-th component on its last token.
ClassPtr product_class(int sigma_size, const std::vector<StepClass>& steps, ClassCaps caps = {});

// Appends a fail token F to Σ and every F-padded extension of each universe
// prefix; all verifiers reject every prefix containing F.
ClassPtr add_fail_token(const VerifierClass& cls, ClassCaps caps = {});

// Throws FailTokenRequired / FailTokenInvalid unless every verifier rejects each
// in-universe F-step whose strict prefix some verifier fully accepts.
void validate_fail_token(const VerifierClass& cls);

} // namespace cotv
