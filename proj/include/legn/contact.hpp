#pragma once

#include <string>

#include "legn/conormal.hpp"

namespace legn {

// Phi = S o J with J(x, y, p) = (x + alpha, y + beta, p + gamma) and
// S(x, y, p) = (lambda x, mu y, mu p / lambda). Pure scalings have alpha = beta = gamma = 0.
class ContactTx {
public:
    enum class Kind { Identity, Scaling, JType, Composite };

    static ContactTx identity(WeightSystem ws, int bound);
    static ContactTx scaling(WeightSystem ws, const Rat& lambda, const Rat& mu, int bound);
    /// Checks the ideal-membership conditions and the pullback certificate.
    static ContactTx jtype(TruncSeries3 alpha, TruncSeries3 beta, TruncSeries3 gamma);

    Kind kind() const;
    const WeightSystem& weights() const noexcept { return alpha_.weights(); }
    int bound() const noexcept { return bound_; }
    const Rat& lambda() const noexcept { return lambda_; }
    const Rat& mu() const noexcept { return mu_; }
    const TruncSeries3& alpha() const noexcept { return alpha_; }
    const TruncSeries3& beta() const noexcept { return beta_; }
    const TruncSeries3& gamma() const noexcept { return gamma_; }
    /// u with Phi^*(dy - p dx) = u (dy - p dx).
    const TruncSeries3& certificate() const noexcept { return cert_; }

    bool has_jpart() const { return !(alpha_.is_zero() && beta_.is_zero() && gamma_.is_zero()); }

private:
    ContactTx(Rat lambda, Rat mu, TruncSeries3 alpha, TruncSeries3 beta, TruncSeries3 gamma);

    Rat lambda_;
    Rat mu_;
    TruncSeries3 alpha_;
    TruncSeries3 beta_;
    TruncSeries3 gamma_;
    TruncSeries3 cert_;
    int bound_;

    friend ContactTx compose(const ContactTx&, const ContactTx&);
    friend ContactTx invert(const ContactTx&);
};

std::string to_string(ContactTx::Kind k);

/// beta with beta = beta0 mod p solving (1 + a_x + p a_y) beta_p = a_p (p + beta_x + p beta_y).
/// alpha is taken as exact (a polynomial); beta is returned up to weight alpha.bound().
TruncSeries3 solve_cauchy(const TruncSeries3& alpha, const TruncSeries3& beta0);

/// gamma forced by the contact condition: gamma (1 + a_x + p a_y) = b_x + p b_y - p (a_x + p a_y).
TruncSeries3 solve_gamma(const TruncSeries3& alpha, const TruncSeries3& beta);

struct ContactResidual {
    TruncSeries3 A, B, C;
};

/// Coefficients of J^*(dy - p dx) = A dx + B dy + C dp for the J-part.
ContactResidual pullback_form(const TruncSeries3& alpha, const TruncSeries3& beta, const TruncSeries3& gamma);

/// Recomputes the pullback and returns the unit factor; throws NotContact on failure.
TruncSeries3 verify_contact(const ContactTx& tx);

/// J-type map built from alpha and beta0 via the Cauchy problem.
ContactTx make_jtype(const TruncSeries3& alpha, const TruncSeries3& beta0);

/// Contact lift of the plane change (x, y) -> (x + a, y + b) for p-free a, b.
ContactTx lift_plane_change(const TruncSeries3& a, const TruncSeries3& b);

/// Checks alpha, beta, gamma, d_x alpha, d_y beta, d_p gamma all vanish at the origin.
void check_group_j(const TruncSeries3& alpha, const TruncSeries3& beta, const TruncSeries3& gamma);

/// Image of the conormal under tx, renormalized so that x = tau^k.
ConormalParam apply_to_conormal(const ContactTx& tx, const ConormalParam& L);

/// a o b: b is applied first.
ContactTx compose(const ContactTx& a, const ContactTx& b);
ContactTx invert(const ContactTx& tx);

} // namespace legn
