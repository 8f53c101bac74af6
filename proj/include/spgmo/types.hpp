#pragma once

#include <Eigen/Dense>

namespace spgmo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

}  // namespace spgmo
