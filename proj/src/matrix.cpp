#include "biext/matrix.hpp"

namespace biext {

MatrixK to_k(const MatrixQ& m) {
    MatrixK k(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) k(i, j) = KScalar(m(i, j));
    return k;
}

MatrixK to_k(const MatrixZ& m) {
    MatrixK k(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) k(i, j) = KScalar(m(i, j));
    return k;
}

MatrixQ to_q(const MatrixZ& m) {
    MatrixQ q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
    return q;
}

MatrixK conj(const MatrixK& m) {
    MatrixK c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j).conj();
    return c;
}

}  // namespace biext
