// SPDX-License-Identifier: Apache-2.0
//
// chansim - statistical radio channel simulation for positioning evaluation
// Copyright (C) 2026 The chansim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#include "chansim/largescale.hpp"
#include "chansim/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>

namespace chansim
{

namespace
{

Eigen::Matrix3d cross_factor(const ScenarioParams &s)
{
    Eigen::Matrix3d c;
    c << 1.0, s.xcorr_DS_K, s.xcorr_DS_SF, //
        s.xcorr_DS_K, 1.0, s.xcorr_K_SF,   //
        s.xcorr_DS_SF, s.xcorr_K_SF, 1.0;
    Eigen::LLT<Eigen::Matrix3d> llt(c);
    if (llt.info() != Eigen::Success)
        throw ValidationError("LSP cross-correlation matrix is not positive definite");
    return llt.matrixL();
}

LspState map_gaussians(const ScenarioParams &s, const Eigen::Matrix3d &factor, const Eigen::Vector3d &g_in)
{
    const Eigen::Vector3d g = factor * g_in;
    LspState out;
    out.ds = std::pow(10.0, s.mu_lgDS + s.sigma_lgDS * g[0]);
    out.k_dB = s.mu_K_dB + s.sigma_K_dB * g[1];
    out.sf_dB = s.sigma_SF_dB * g[2];
    return out;
}

} // namespace

LspState draw_lsps(const ScenarioParams &scenario, RandomStream &rng)
{
    Eigen::Vector3d g;
    g[0] = rng.normal();
    g[1] = rng.normal();
    g[2] = rng.normal();
    return map_gaussians(scenario, cross_factor(scenario), g);
}

std::vector<LspState> lsp_field_at(const ScenarioParams &scenario, std::span<const Vec3> positions,
                                   std::uint64_t rng_seed)
{
    if (positions.empty())
        throw ValidationError("lsp_field_at needs at least one position");

    auto dist = [&](const Vec3 &a, const Vec3 &b) {
        return scenario.vertical_decorrelation ? distance_3d(a, b) : distance_2d(a, b);
    };

    // Collapse positions at zero distance onto one field point.
    std::vector<Vec3> unique;
    std::vector<std::size_t> slot(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i)
    {
        std::size_t j = 0;
        while (j < unique.size() && dist(unique[j], positions[i]) != 0.0)
            ++j;
        if (j == unique.size())
            unique.push_back(positions[i]);
        slot[i] = j;
    }

    const auto n = static_cast<Eigen::Index>(unique.size());
    RandomStream rng(rng_seed);
    const double decorr[3] = {scenario.decorr_DS_m, scenario.decorr_K_m, scenario.decorr_SF_m};
    Eigen::MatrixXd field(n, 3);

    for (int lsp = 0; lsp < 3; ++lsp)
    {
        Eigen::MatrixXd cov(n, n);
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b)
                cov(a, b) = std::exp(-dist(unique[a], unique[b]) / decorr[lsp]);

        Eigen::VectorXd g(n);
        for (Eigen::Index i = 0; i < n; ++i)
            g[i] = rng.normal();

        // cov = P^T L D L^T P, so P^T L sqrt(D) g has covariance cov.
        Eigen::LDLT<Eigen::MatrixXd> ldlt(cov);
        Eigen::VectorXd d = ldlt.vectorD().cwiseMax(0.0).cwiseSqrt();
        Eigen::VectorXd y = ldlt.matrixL() * d.cwiseProduct(g);
        field.col(lsp) = ldlt.transpositionsP().transpose() * y;
    }

    const auto factor = cross_factor(scenario);
    std::vector<LspState> out(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i)
    {
        const auto r = static_cast<Eigen::Index>(slot[i]);
        out[i] = map_gaussians(scenario, factor, Eigen::Vector3d(field(r, 0), field(r, 1), field(r, 2)));
    }
    return out;
}

} // namespace chansim
