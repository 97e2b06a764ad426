#include "morpi/ndiff/tape.hpp"

#include <cmath>

#include "morpi/errors.hpp"

namespace morpi::ndiff {

int Tape::push(Mat value, int pa, int pb, std::function<void(Tape&, const Node&)> pull) {
  Node n;
  n.value = std::move(value);
  n.parent_a = pa;
  n.parent_b = pb;
  n.tracked = tracked(pa) || tracked(pb);
  if (n.tracked) n.pull = std::move(pull);
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

int Tape::constant(Mat value) { return push(std::move(value), -1, -1, nullptr); }

int Tape::leaf(Mat value) {
  const int id = push(std::move(value), -1, -1, nullptr);
  nodes_[static_cast<std::size_t>(id)].tracked = true;
  return id;
}

Mat& Tape::grad_ref(int id) {
  Node& n = nodes_[static_cast<std::size_t>(id)];
  if (n.grad.size() == 0) n.grad = Mat::Zero(n.value.rows(), n.value.cols());
  return n.grad;
}

void Tape::accumulate(int id, const Mat& g) {
  if (!tracked(id)) return;
  grad_ref(id) += g;
}

const Mat& Tape::grad(int id) const {
  const Node& n = nodes_[static_cast<std::size_t>(id)];
  if (!has_gradients_ || n.grad.size() == 0)
    throw NumericError("tape: gradient requested before backward(), or node untracked");
  return n.grad;
}

Mat Tape::grad_value(int id) const {
  if (!has_gradients_) throw NumericError("tape: gradient requested before backward()");
  const Node& n = nodes_[static_cast<std::size_t>(id)];
  if (n.grad.size() == 0) return Mat::Zero(n.value.rows(), n.value.cols());
  return n.grad;
}

void Tape::clear() {
  nodes_.clear();
  has_gradients_ = false;
}

void Tape::backward(int scalar_id) {
  if (nodes_.empty()) throw NumericError("tape: backward() on an empty graph");
  Node& out = nodes_[static_cast<std::size_t>(scalar_id)];
  if (out.value.rows() != 1 || out.value.cols() != 1)
    throw NumericError("tape: backward() target must be a 1x1 scalar");
  for (Node& n : nodes_) n.grad.resize(0, 0);
  grad_ref(scalar_id).setConstant(1.0);
  for (int id = scalar_id; id >= 0; --id) {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    if (n.pull && n.grad.size() != 0) n.pull(*this, n);
  }
  has_gradients_ = true;
}

int Tape::matmul(int a, int b) {
  Mat v = value(a) * value(b);
  return push(std::move(v), a, b, [](Tape& t, const Node& n) {
    t.accumulate(n.parent_a, n.grad * t.value(n.parent_b).transpose());
    t.accumulate(n.parent_b, t.value(n.parent_a).transpose() * n.grad);
  });
}

int Tape::add(int a, int b) {
  Mat v = value(a) + value(b);
  return push(std::move(v), a, b, [](Tape& t, const Node& n) {
    t.accumulate(n.parent_a, n.grad);
    t.accumulate(n.parent_b, n.grad);
  });
}

int Tape::sub(int a, int b) {
  Mat v = value(a) - value(b);
  return push(std::move(v), a, b, [](Tape& t, const Node& n) {
    t.accumulate(n.parent_a, n.grad);
    t.accumulate(n.parent_b, -n.grad);
  });
}

int Tape::hadamard(int a, int b) {
  Mat v = value(a).cwiseProduct(value(b));
  return push(std::move(v), a, b, [](Tape& t, const Node& n) {
    t.accumulate(n.parent_a, n.grad.cwiseProduct(t.value(n.parent_b)));
    t.accumulate(n.parent_b, n.grad.cwiseProduct(t.value(n.parent_a)));
  });
}

int Tape::div(int a, int b) {
  Mat v = value(a).cwiseQuotient(value(b));
  return push(std::move(v), a, b, [](Tape& t, const Node& n) {
    const Mat& bv = t.value(n.parent_b);
    t.accumulate(n.parent_a, n.grad.cwiseQuotient(bv));
    t.accumulate(n.parent_b, -n.grad.cwiseProduct(n.value).cwiseQuotient(bv));
  });
}

int Tape::add_col(int a, int col) {
  Mat v = value(a).colwise() + Eigen::VectorXd(value(col).col(0));
  return push(std::move(v), a, col, [](Tape& t, const Node& n) {
    t.accumulate(n.parent_a, n.grad);
    t.accumulate(n.parent_b, n.grad.rowwise().sum());
  });
}

int Tape::scale_rows(int a, int col) {
  Mat v = value(col).col(0).asDiagonal() * value(a);
  return push(std::move(v), a, col, [](Tape& t, const Node& n) {
    const Mat& av = t.value(n.parent_a);
    const Mat& cv = t.value(n.parent_b);
    t.accumulate(n.parent_a, cv.col(0).asDiagonal() * n.grad);
    t.accumulate(n.parent_b, n.grad.cwiseProduct(av).rowwise().sum());
  });
}

int Tape::scalar_mul(int a, double s) {
  Mat v = value(a) * s;
  return push(std::move(v), a, -1,
              [s](Tape& t, const Node& n) { t.accumulate(n.parent_a, n.grad * s); });
}

int Tape::add_scalar(int a, double s) {
  Mat v = value(a).array() + s;
  return push(std::move(v), a, -1,
              [](Tape& t, const Node& n) { t.accumulate(n.parent_a, n.grad); });
}

int Tape::sin(int a) {
  Mat v = value(a).array().sin();
  return push(std::move(v), a, -1, [](Tape& t, const Node& n) {
    t.accumulate(n.parent_a, n.grad.cwiseProduct(Mat(t.value(n.parent_a).array().cos())));
  });
}

int Tape::cos(int a) {
  Mat v = value(a).array().cos();
  return push(std::move(v), a, -1, [](Tape& t, const Node& n) {
    t.accumulate(n.parent_a, -n.grad.cwiseProduct(Mat(t.value(n.parent_a).array().sin())));
  });
}

int Tape::tanh(int a) {
  Mat v = value(a).array().tanh();
  return push(std::move(v), a, -1, [](Tape& t, const Node& n) {
    t.accumulate(n.parent_a, n.grad.cwiseProduct(Mat(1.0 - n.value.array().square())));
  });
}

int Tape::sqrt(int a) {
  Mat v = value(a).array().sqrt();
  return push(std::move(v), a, -1, [](Tape& t, const Node& n) {
    t.accumulate(n.parent_a, Mat(n.grad.array() * 0.5 / n.value.array()));
  });
}

int Tape::row_mean(int a) {
  const auto rows = value(a).rows();
  Mat v = value(a).colwise().mean();
  return push(std::move(v), a, -1, [rows](Tape& t, const Node& n) {
    t.accumulate(n.parent_a, n.grad.replicate(rows, 1) / static_cast<double>(rows));
  });
}

int Tape::tile_rows(int a, Eigen::Index n_rows) {
  Mat v = value(a).replicate(n_rows, 1);
  return push(std::move(v), a, -1, [](Tape& t, const Node& n) {
    t.accumulate(n.parent_a, n.grad.colwise().sum());
  });
}

int Tape::mean_all(int a) {
  const double count = static_cast<double>(value(a).size());
  Mat v(1, 1);
  v(0, 0) = value(a).mean();
  return push(std::move(v), a, -1, [count](Tape& t, const Node& n) {
    const Mat& pv = t.value(n.parent_a);
    t.accumulate(n.parent_a, Mat::Constant(pv.rows(), pv.cols(), n.grad(0, 0) / count));
  });
}

int Tape::row(int a, Eigen::Index r) {
  Mat v = value(a).row(r);
  return push(std::move(v), a, -1, [r](Tape& t, const Node& n) {
    const Mat& pv = t.value(n.parent_a);
    Mat g = Mat::Zero(pv.rows(), pv.cols());
    g.row(r) = n.grad;
    t.accumulate(n.parent_a, g);
  });
}

}  // namespace morpi::ndiff
