#include "optlab/admodel/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace optlab::admodel {

namespace {

void check_input(const MlpSpec& spec, const Vector& theta, const Vector& x) {
    spec.validate();
    if (theta.size() != spec.param_count())
        throw std::invalid_argument("mlp: parameter vector length mismatch");
    if (x.size() != spec.input_dim()) throw std::invalid_argument("mlp: input width mismatch");
}

}  // namespace

std::size_t MlpSpec::param_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < layer_widths.size(); ++l)
        n += layer_widths[l + 1] * layer_widths[l] + layer_widths[l + 1];
    return n;
}

std::size_t MlpSpec::weight_offset(std::size_t layer) const {
    std::size_t off = 0;
    for (std::size_t l = 0; l < layer; ++l) off += layer_widths[l + 1] * layer_widths[l];
    return off;
}

std::size_t MlpSpec::bias_offset(std::size_t layer) const {
    std::size_t off = weight_offset(depth());  // total weight count
    for (std::size_t l = 0; l < layer; ++l) off += layer_widths[l + 1];
    return off;
}

void MlpSpec::validate() const {
    if (layer_widths.size() < 2) throw std::invalid_argument("MlpSpec: needs at least 2 widths");
    for (std::size_t w : layer_widths)
        if (w == 0) throw std::invalid_argument("MlpSpec: zero layer width");
}

Vector init_params(const MlpSpec& spec, numkit::RngStream& rng) {
    spec.validate();
    Vector theta(spec.param_count());
    for (std::size_t l = 0; l < spec.depth(); ++l) {
        const std::size_t fan_in = spec.layer_widths[l];
        const std::size_t fan_out = spec.layer_widths[l + 1];
        const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        const std::size_t w0 = spec.weight_offset(l);
        for (std::size_t i = 0; i < fan_out * fan_in; ++i)
            theta[w0 + i] = rng.uniform(-bound, bound);
        // biases stay zero
    }
    return theta;
}

Vector forward(const MlpSpec& spec, const Vector& theta, const Vector& x) {
    check_input(spec, theta, x);
    Vector z = x;
    for (std::size_t l = 0; l < spec.depth(); ++l) {
        const std::size_t in = spec.layer_widths[l];
        const std::size_t out = spec.layer_widths[l + 1];
        const std::size_t w0 = spec.weight_offset(l);
        const std::size_t b0 = spec.bias_offset(l);
        const Activation act = spec.layer_activation(l);
        Vector s(out);
        for (std::size_t r = 0; r < out; ++r) {
            double acc = theta[b0 + r];
            const std::size_t row = w0 + r * in;
            for (std::size_t c = 0; c < in; ++c) acc += theta[row + c] * z[c];
            s[r] = act_value(act, acc);
        }
        z = std::move(s);
    }
    return z;
}

Vector param_gradient(const MlpSpec& spec, const Vector& theta, const Vector& x,
                      const Vector& upstream) {
    check_input(spec, theta, x);
    if (upstream.size() != spec.output_dim())
        throw std::invalid_argument("param_gradient: upstream width mismatch");

    const std::size_t L = spec.depth();
    std::vector<Vector> acts(L + 1);  // acts[0] = x, acts[l+1] = layer l output
    std::vector<Vector> act_d1(L);    // activation first derivative per unit
    acts[0] = x;
    for (std::size_t l = 0; l < L; ++l) {
        const std::size_t in = spec.layer_widths[l];
        const std::size_t out = spec.layer_widths[l + 1];
        const std::size_t w0 = spec.weight_offset(l);
        const std::size_t b0 = spec.bias_offset(l);
        const Activation act = spec.layer_activation(l);
        acts[l + 1] = Vector(out);
        act_d1[l] = Vector(out);
        for (std::size_t r = 0; r < out; ++r) {
            double acc = theta[b0 + r];
            const std::size_t row = w0 + r * in;
            for (std::size_t c = 0; c < in; ++c) acc += theta[row + c] * acts[l][c];
            const double t = act_value(act, acc);
            acts[l + 1][r] = t;
            act_d1[l][r] = act_derivs(act, t).d1;
        }
    }

    Vector grad(spec.param_count());
    Vector delta(spec.output_dim());
    for (std::size_t r = 0; r < delta.size(); ++r) delta[r] = upstream[r] * act_d1[L - 1][r];

    for (std::size_t l = L; l-- > 0;) {
        const std::size_t in = spec.layer_widths[l];
        const std::size_t out = spec.layer_widths[l + 1];
        const std::size_t w0 = spec.weight_offset(l);
        const std::size_t b0 = spec.bias_offset(l);
        for (std::size_t r = 0; r < out; ++r) {
            const double d = delta[r];
            grad[b0 + r] = d;
            const std::size_t row = w0 + r * in;
            for (std::size_t c = 0; c < in; ++c) grad[row + c] = d * acts[l][c];
        }
        if (l == 0) break;
        Vector next(in);
        for (std::size_t c = 0; c < in; ++c) {
            double acc = 0.0;
            for (std::size_t r = 0; r < out; ++r) acc += theta[w0 + r * in + c] * delta[r];
            next[c] = acc * act_d1[l - 1][c];
        }
        delta = std::move(next);
    }
    return grad;
}

namespace {

using JetLayer = std::vector<Jet2>;

struct JetTrace {
    std::vector<JetLayer> pre;   // pre-activation jets per layer
    std::vector<JetLayer> post;  // post-activation jets; post[0] is the input
};

JetTrace jet_forward(const MlpSpec& spec, const Vector& theta, const Vector& x,
                     std::size_t coord) {
    check_input(spec, theta, x);
    if (coord >= spec.input_dim()) throw std::invalid_argument("input_jet: coord out of range");
    if (!twice_differentiable(spec.activation) || !twice_differentiable(spec.output_activation))
        throw std::invalid_argument("input_jet: non-smooth activation");

    const std::size_t L = spec.depth();
    JetTrace tr;
    tr.pre.resize(L);
    tr.post.resize(L + 1);
    tr.post[0].resize(spec.input_dim());
    for (std::size_t i = 0; i < spec.input_dim(); ++i)
        tr.post[0][i] = Jet2{x[i], i == coord ? 1.0 : 0.0, 0.0};

    for (std::size_t l = 0; l < L; ++l) {
        const std::size_t in = spec.layer_widths[l];
        const std::size_t out = spec.layer_widths[l + 1];
        const std::size_t w0 = spec.weight_offset(l);
        const std::size_t b0 = spec.bias_offset(l);
        const Activation act = spec.layer_activation(l);
        tr.pre[l].resize(out);
        tr.post[l + 1].resize(out);
        for (std::size_t r = 0; r < out; ++r) {
            Jet2 s{theta[b0 + r], 0.0, 0.0};
            const std::size_t row = w0 + r * in;
            for (std::size_t c = 0; c < in; ++c) {
                const double w = theta[row + c];
                s.value += w * tr.post[l][c].value;
                s.d1 += w * tr.post[l][c].d1;
                s.d2 += w * tr.post[l][c].d2;
            }
            tr.pre[l][r] = s;
            const double t = act_value(act, s.value);
            const ActDerivs d = act_derivs(act, t);
            tr.post[l + 1][r] = Jet2{t, d.d1 * s.d1, d.d2 * s.d1 * s.d1 + d.d1 * s.d2};
        }
    }
    return tr;
}

}  // namespace

std::vector<Jet2> input_jet(const MlpSpec& spec, const Vector& theta, const Vector& x,
                            std::size_t coord) {
    return jet_forward(spec, theta, x, coord).post.back();
}

Vector jet_param_gradient(const MlpSpec& spec, const Vector& theta, const Vector& x,
                          std::size_t coord, const Vector& w_value, const Vector& w_d1,
                          const Vector& w_d2) {
    const JetTrace tr = jet_forward(spec, theta, x, coord);
    const std::size_t L = spec.depth();
    if (w_value.size() != spec.output_dim() || w_d1.size() != spec.output_dim() ||
        w_d2.size() != spec.output_dim())
        throw std::invalid_argument("jet_param_gradient: weight vector width mismatch");

    Vector grad(spec.param_count());
    JetLayer zbar(spec.output_dim());
    for (std::size_t r = 0; r < zbar.size(); ++r) zbar[r] = Jet2{w_value[r], w_d1[r], w_d2[r]};

    for (std::size_t l = L; l-- > 0;) {
        const std::size_t in = spec.layer_widths[l];
        const std::size_t out = spec.layer_widths[l + 1];
        const std::size_t w0 = spec.weight_offset(l);
        const std::size_t b0 = spec.bias_offset(l);
        const Activation act = spec.layer_activation(l);

        // activation adjoint: z = f(s) applied componentwise on jets
        JetLayer sbar(out);
        for (std::size_t r = 0; r < out; ++r) {
            const Jet2& s = tr.pre[l][r];
            const double t = tr.post[l + 1][r].value;
            const ActDerivs d = act_derivs(act, t);
            const Jet2& zb = zbar[r];
            sbar[r].value = zb.value * d.d1 + zb.d1 * d.d2 * s.d1 +
                            zb.d2 * (d.d3 * s.d1 * s.d1 + d.d2 * s.d2);
            sbar[r].d1 = zb.d1 * d.d1 + zb.d2 * 2.0 * d.d2 * s.d1;
            sbar[r].d2 = zb.d2 * d.d1;
        }

        // affine adjoint: s = W z_prev + b
        const JetLayer& zprev = tr.post[l];
        for (std::size_t r = 0; r < out; ++r) {
            const std::size_t row = w0 + r * in;
            const Jet2& sb = sbar[r];
            grad[b0 + r] = sb.value;
            for (std::size_t c = 0; c < in; ++c)
                grad[row + c] =
                    sb.value * zprev[c].value + sb.d1 * zprev[c].d1 + sb.d2 * zprev[c].d2;
        }
        if (l == 0) break;
        JetLayer prev_bar(in);
        for (std::size_t c = 0; c < in; ++c) {
            Jet2 acc{0.0, 0.0, 0.0};
            for (std::size_t r = 0; r < out; ++r) {
                const double w = theta[w0 + r * in + c];
                acc.value += w * sbar[r].value;
                acc.d1 += w * sbar[r].d1;
                acc.d2 += w * sbar[r].d2;
            }
            prev_bar[c] = acc;
        }
        zbar = std::move(prev_bar);
    }
    return grad;
}

}  // namespace optlab::admodel
