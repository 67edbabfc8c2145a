#pragma once

#include "sosgap/group/ball.hpp"
#include "sosgap/numerics/rational.hpp"

namespace sosgap {

/// m = 2 * (max word length over the support) - chi(S), with the support of
/// the residual taken to be the whole product ball.
int m_of(const Ball& support, const GeneratingSet& s);

/// lambda_used - prec - 2^m * r_l1_upper, evaluated exactly and rounded down.
/// May be <= 0, in which case nothing is certified.
double certified_bound(double lambda_used, double prec, double r_l1_upper, int m);
double certified_bound(const Rational& lambda_used, double prec, double r_l1_upper, int m);

/// sqrt(2 lambda / |S|) rounded down (0 for lambda <= 0).
double kazhdan_from_lambda(double lambda, int s_size);

}  // namespace sosgap
