#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace rbd {

using Scalar = double;

template <typename T>
using MatrixX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <typename T>
using VectorX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using VecX = VectorX<Scalar>;
using MatX = MatrixX<Scalar>;

// V x 3 vertex positions, F x 3 vertex-index triples.
using PointMat = Eigen::Matrix<Scalar, Eigen::Dynamic, 3>;
using FaceMat = Eigen::Matrix<int, Eigen::Dynamic, 3>;

using SparseMat = Eigen::SparseMatrix<Scalar>;
using Triplet = Eigen::Triplet<Scalar>;

}  // namespace rbd
