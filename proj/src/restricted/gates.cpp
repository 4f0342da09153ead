#include <cmath>

#include "rio/gates.hpp"

namespace rio::gates {

Matrix sigma(int i) {
    Matrix m = Matrix::Zero(2, 2);
    const Complex I(0.0, 1.0);
    switch (i) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -I, I, 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("sigma index must be 0..3");
    }
    return m;
}

Matrix hadamard() {
    Matrix m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

Matrix r(int z) {
    if (z != 0 && z != 1) throw std::invalid_argument("r(z) takes a bit");
    return z ? sigma(3) : sigma(0);
}

Matrix cnot() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
}

Matrix cnot_2_1() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(3, 1) = m(2, 2) = m(1, 3) = 1.0;
    return m;
}

Matrix identity(int qubits) {
    if (qubits < 0 || qubits > 12) throw std::invalid_argument("identity size out of range");
    const Eigen::Index d = Eigen::Index{1} << qubits;
    return Matrix::Identity(d, d);
}

}  // namespace rio::gates
