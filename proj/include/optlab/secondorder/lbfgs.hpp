#pragma once

#include <deque>

#include "optlab/firstorder/trace.hpp"
#include "optlab/problems/objective.hpp"

namespace optlab::secondorder {

using firstorder::TraceRecord;
using numkit::Vector;
using problems::FiniteSumObjective;

struct SecantPair {
    Vector s;  // θ_{k+1} − θ_k
    Vector y;  // ∇f(θ_{k+1}) − ∇f(θ_k)
    double rho = 0.0;  // 1/(yᵀs)
};

/// Bounded FIFO of secant pairs, oldest evicted first. Pairs failing the
/// curvature skip rule yᵀs > 1e-10·‖y‖·‖s‖ are rejected.
class LbfgsMemory {
public:
    explicit LbfgsMemory(std::size_t capacity) : capacity_(capacity) {}

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return pairs_.size(); }
    const SecantPair& pair(std::size_t i) const { return pairs_[i]; }  // 0 = oldest

    bool push(Vector s, Vector y);
    void clear() { pairs_.clear(); }

    /// B̃_k⁰ scale τ_k = (sᵀy)/(yᵀy) of the newest pair, 1 when empty.
    double scale() const;

private:
    std::size_t capacity_;
    std::deque<SecantPair> pairs_;
};

/// Two-loop recursion: returns B̃_k·g using the stored pairs and the scaled
/// identity B̃_k⁰ = τ_k·I. O(n·S).
Vector lbfgs_two_loop(const Vector& g, const LbfgsMemory& memory);

struct LbfgsOptions {
    std::size_t memory = 10;
    std::size_t max_iter = 100;
    double grad_tol = 0.0;
    double c1 = 1e-4;
    double c2 = 0.9;
    int max_line_search = 25;
};

struct LbfgsResult {
    std::vector<TraceRecord> trace;
    Vector final_theta;
    bool line_search_failed = false;  // two consecutive failures
};

/// θ_{k+1} = θ_k + α_k·p_k with p_k = −B̃_k∇f(θ_k) and a strong Wolfe line
/// search. On a line-search failure the memory is reset and a safeguarded
/// gradient step is taken; a second consecutive failure terminates.
LbfgsResult lbfgs_run(const FiniteSumObjective& obj, Vector theta0, const LbfgsOptions& opts);

}  // namespace optlab::secondorder
