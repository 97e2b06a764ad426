#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

namespace morpi::ndiff {

using Mat = Eigen::MatrixXd;

/// Reverse-mode automatic differentiation over dense matrices.
///
/// A Tape records one computation as a sequence of primitive nodes; calling
/// backward(scalar) accumulates d(scalar)/d(node) into every tracked node.
/// Forward tangent channels are built from the same primitives, so losses
/// that consume time-derivatives of network outputs differentiate exactly
/// like any other expression.
class Tape {
 public:
  /// Untracked input (data, targets, masks). Gradients never flow into it.
  int constant(Mat value);

  /// Tracked leaf (a parameter). Its gradient is available after backward().
  int leaf(Mat value);

  // --- primitives ------------------------------------------------------
  int matmul(int a, int b);             // A * B
  int add(int a, int b);                // elementwise
  int sub(int a, int b);                // elementwise
  int hadamard(int a, int b);           // elementwise product
  int div(int a, int b);                // elementwise quotient
  int add_col(int a, int col);          // broadcast column vector over columns
  int scale_rows(int a, int col);       // scale row i by col(i)
  int scalar_mul(int a, double s);
  int add_scalar(int a, double s);
  int sin(int a);
  int cos(int a);
  int tanh(int a);
  int sqrt(int a);
  int row_mean(int a);                  // mean over rows -> 1 x cols
  int tile_rows(int a, Eigen::Index n); // replicate a 1 x cols row n times
  int mean_all(int a);                  // -> 1 x 1
  int row(int a, Eigen::Index r);       // slice one row -> 1 x cols

  const Mat& value(int id) const { return nodes_[static_cast<std::size_t>(id)].value; }
  double scalar(int id) const { return value(id)(0, 0); }

  /// Reverse pass from a 1x1 node. Gradients of earlier backward() calls are
  /// cleared first.
  void backward(int scalar_id);

  /// d(scalar)/d(node) of the most recent backward() call. Throws when the
  /// node never received gradient flow.
  const Mat& grad(int id) const;

  /// Same, but returns an explicit zero matrix for nodes off the loss path
  /// (e.g. parameters of a constant objective).
  Mat grad_value(int id) const;

  std::size_t size() const { return nodes_.size(); }
  void clear();

 private:
  struct Node {
    Mat value;
    Mat grad;
    bool tracked = false;   // gradient requested here or upstream
    int parent_a = -1;
    int parent_b = -1;
    std::function<void(Tape&, const Node&)> pull;  // adds node.grad into parents
  };

  int push(Mat value, int pa, int pb, std::function<void(Tape&, const Node&)> pull);
  Mat& grad_ref(int id);
  void accumulate(int id, const Mat& g);
  bool tracked(int id) const { return id >= 0 && nodes_[static_cast<std::size_t>(id)].tracked; }

  std::vector<Node> nodes_;
  bool has_gradients_ = false;
};

}  // namespace morpi::ndiff
