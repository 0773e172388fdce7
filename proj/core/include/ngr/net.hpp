#pragma once

#include "ngr/tensor.hpp"

#include <array>
#include <string>
#include <vector>

namespace ngr::net {

enum class Norm { none, per_channel };

// Architecture of the gradient-prediction network: a shared trunk of
// conv -> per-channel normalization -> leaky ReLU blocks (optional long skip
// from the first block's output to the last), followed by three independent
// convolutional heads, one per gradient axis.
struct NetConfig {
    int blocks = 6;
    int width = 48;
    int kernel = 3;
    bool skip = true;
    double leaky_slope = 0.2;
    Norm normalization = Norm::per_channel;
    int input_channels = 0;   // set to the image channel count before use
    int output_channels = 0;  // 0 means "same as input_channels"

    int head_channels() const { return output_channels > 0 ? output_channels : input_channels; }
    void validate() const;
    bool operator==(const NetConfig&) const = default;
};

// One convolution layer. Weights are stored flat as [ky][kx][in][out]
// (out fastest), i.e. exactly the im2col weight-matrix layout; biases per
// output channel.
struct Conv {
    int kernel = 0, in_channels = 0, out_channels = 0;
    std::vector<double> w;
    std::vector<double> b;

    static Conv zeros(int kernel, int in_channels, int out_channels);
};

struct NetParams {
    std::vector<Conv> trunk;    // cfg.blocks layers
    std::array<Conv, 3> heads;  // one per axis, in Axis::{h,v,t} order

    static NetParams zeros(const NetConfig& cfg);
    bool shapes_match(const NetParams& o) const;
};

struct GradientTriple {
    Tensor3 g_h, g_v, g_t;
};

struct AdamState {
    NetParams m, v;
    long t = 0;
    double lr = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    static AdamState init(const NetConfig& cfg, double lr);
};

// Fixed network input: uniform samples in [0, amplitude). Never re-sampled
// during a solve.
Tensor3 init_input(Rng& rng, int height, int width, int channels, double amplitude);

// He-style initialization: weights ~ N(0, 2/fan_in), biases zero. Sampling
// order is trunk layers then heads, flat weight order within a layer.
NetParams init_params(Rng& rng, const NetConfig& cfg);

GradientTriple forward(const NetParams& params, const NetConfig& cfg, const Tensor3& input);

// Loss = sum_i (lambda_i/2) ||target_i - f_i(input)||^2 plus exact
// reverse-mode gradients with respect to every parameter.
struct LossGrad {
    double loss = 0.0;
    NetParams grads;
    GradientTriple prediction;
};
LossGrad loss_and_grad(const NetParams& params, const NetConfig& cfg, const Tensor3& input,
                       const GradientTriple& target, const std::array<double, 3>& lambda);

// Standard Adam with bias correction; updates params and state in place.
void adam_step(NetParams& params, const NetParams& grads, AdamState& state);

// Checkpoint format: magic "NGRW", u32 LE version, serialized NetConfig,
// parameter tensors in declaration order as little-endian doubles.
void save_params(const NetParams& params, const NetConfig& cfg, const std::string& path);
NetParams load_params(const std::string& path, const NetConfig& expected_cfg);

} // namespace ngr::net
