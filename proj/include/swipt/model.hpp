#pragma once

// Parameter containers and the bounded path-loss law shared by the closed forms
// and the simulator. All powers are linear Watts; dB only exists at the CLI.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "swipt/errors.hpp"

namespace swipt {

namespace detail {

inline void require(bool ok, const std::string& type, const std::string& bound) {
    if (!ok) throw DomainError(type + ": violated bound " + bound);
}

}  // namespace detail

/// Physical-layer and geometry constants of the transmitter-receiver network.
class SystemParams {
public:
    struct Fields {
        double lambda = 1e-5;   ///< transmitter density
        double d0 = 20.0;       ///< transmitter-receiver separation
        double r0 = 4.0;        ///< minimum path-loss distance
        double alpha = 4.0;     ///< path-loss exponent
        double sigma2 = 1.0;    ///< AWGN variance [W]
        double sigmaC2 = 1.0;   ///< conversion-noise variance [W]
        double omega = 1e-3;    ///< SINR threshold (linear)
        double zeta = 1.0;      ///< RF-to-DC efficiency
    };

    SystemParams() : SystemParams(Fields{}) {}

    explicit SystemParams(const Fields& f) : f_(f) {
        using detail::require;
        const std::string t = "SystemParams";
        require(f.lambda >= 0.0, t, "lambda >= 0");
        require(f.r0 > 1.0, t, "r0 > 1");
        require(f.d0 > f.r0, t, "d0 > r0");
        require(f.alpha > 2.0, t, "alpha > 2");
        require(f.sigma2 >= 0.0, t, "sigma2 >= 0");
        require(f.sigmaC2 >= 0.0, t, "sigmaC2 >= 0");
        require(f.omega > 0.0, t, "omega > 0");
        require(f.zeta > 0.0 && f.zeta <= 1.0, t, "0 < zeta <= 1");
        require(std::isfinite(f.lambda) && std::isfinite(f.d0) && std::isfinite(f.alpha) &&
                    std::isfinite(f.sigma2) && std::isfinite(f.sigmaC2) && std::isfinite(f.omega),
                t, "finite values");
    }

    const Fields& fields() const { return f_; }

    double lambda() const { return f_.lambda; }
    double d0() const { return f_.d0; }
    double r0() const { return f_.r0; }
    double alpha() const { return f_.alpha; }
    double sigma2() const { return f_.sigma2; }
    double sigma_c2() const { return f_.sigmaC2; }
    double omega() const { return f_.omega; }
    double zeta() const { return f_.zeta; }
    double delta() const { return f_.alpha / 2.0; }

    SystemParams with_lambda(double lambda) const {
        Fields f = f_;
        f.lambda = lambda;
        return SystemParams(f);
    }

private:
    Fields f_;
};

/// Relay layer for the cooperative protocol.
class CoopParams {
public:
    struct Fields {
        double lambda_r = 1e-2;                  ///< relay density
        double eta = 8.0;                        ///< sector radius
        double theta0 = std::numbers::pi / 3.0;  ///< sector half-angle [rad]
        double p_r = 1e6;                        ///< relay transmit power [W]
        double nu_r = 0.3;                       ///< slot-2 power-splitting ratio
    };

    CoopParams() : CoopParams(SystemParams{}, Fields{}) {}

    CoopParams(SystemParams base, const Fields& f) : base_(std::move(base)), f_(f) {
        using detail::require;
        const std::string t = "CoopParams";
        require(f.lambda_r >= 0.0 && std::isfinite(f.lambda_r), t, "lambda_r >= 0");
        require(f.eta > base_.r0() && std::isfinite(f.eta), t, "eta > r0");
        require(f.theta0 > 0.0 && f.theta0 <= std::numbers::pi, t, "0 < theta0 <= pi");
        require(f.p_r >= 0.0, t, "p_r >= 0");
        require(f.nu_r > 0.0 && f.nu_r < 1.0, t, "0 < nu_r < 1");
    }

    const SystemParams& base() const { return base_; }
    const Fields& fields() const { return f_; }

    double lambda_r() const { return f_.lambda_r; }
    double eta() const { return f_.eta; }
    double theta0() const { return f_.theta0; }
    double p_r() const { return f_.p_r; }
    double nu_r() const { return f_.nu_r; }

    /// Area of the annular part of the selection sector, theta0 (eta^2 - r0^2).
    double annulus_area() const {
        return f_.theta0 * (f_.eta * f_.eta - base_.r0() * base_.r0());
    }

private:
    SystemParams base_;
    Fields f_;
};

enum class SplitMode { Fixed, Joint };

/// Outage ceiling and harvest floor for the transmit-power minimization.
class ConstraintSpec {
public:
    static ConstraintSpec fixed(double c_i, double c_h, double nu0) {
        return ConstraintSpec(c_i, c_h, SplitMode::Fixed, nu0);
    }
    static ConstraintSpec joint(double c_i, double c_h) {
        return ConstraintSpec(c_i, c_h, SplitMode::Joint, std::nullopt);
    }

    double c_i() const { return c_i_; }
    double c_h() const { return c_h_; }
    SplitMode mode() const { return mode_; }
    /// Fixed split ratio; only meaningful in fixed mode.
    double nu0() const { return nu0_.value(); }

private:
    ConstraintSpec(double c_i, double c_h, SplitMode mode, std::optional<double> nu0)
        : c_i_(c_i), c_h_(c_h), mode_(mode), nu0_(nu0) {
        using detail::require;
        const std::string t = "ConstraintSpec";
        require(c_i > 0.0 && c_i < 1.0, t, "0 < c_i < 1");
        require(c_h > 0.0 && std::isfinite(c_h), t, "c_h > 0");
        if (mode == SplitMode::Fixed) {
            require(nu0.has_value() && *nu0 > 0.0 && *nu0 < 1.0, t, "0 < nu0 < 1");
        }
    }

    double c_i_;
    double c_h_;
    SplitMode mode_;
    std::optional<double> nu0_;
};

/// Attenuation dist^-alpha, floored at r0^-alpha for dist <= r0.
inline double bounded_pathloss(double dist, double r0, double alpha) {
    return std::pow(dist > r0 ? dist : r0, -alpha);
}

inline double bounded_pathloss(double dist, const SystemParams& params) {
    return bounded_pathloss(dist, params.r0(), params.alpha());
}

inline double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

inline double linear_to_db(double x) {
    if (!(x > 0.0)) throw DomainError("linear_to_db: argument must be > 0");
    return 10.0 * std::log10(x);
}

}  // namespace swipt
