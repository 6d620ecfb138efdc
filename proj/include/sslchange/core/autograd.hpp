#pragma once

#include <functional>
#include <memory>
#include <unordered_set>
#include <vector>

#include "sslchange/core/tensor.hpp"

namespace sslchange::ag {

inline thread_local bool g_grad_enabled = true;

struct NoGradGuard {
  bool prev;
  NoGradGuard() : prev(g_grad_enabled) { g_grad_enabled = false; }
  ~NoGradGuard() { g_grad_enabled = prev; }
};

inline bool grad_enabled() { return g_grad_enabled; }

template <typename T>
struct Node {
  Tensor<T> value;
  Tensor<T> grad;  // allocated on first accumulation
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  // Reads this->grad and accumulates into parents' grads.
  std::function<void(Node&)> backward_fn;

  Tensor<T>& ensure_grad() {
    if (!grad.defined()) grad = Tensor<T>::zeros(value.shape());
    return grad;
  }
};

// Value-semantic handle to a graph node.
template <typename T>
class Var {
 public:
  Var() = default;

  explicit Var(Tensor<T> value, bool requires_grad = false)
      : node_(std::make_shared<Node<T>>()) {
    node_->value = std::move(value);
    node_->requires_grad = requires_grad;
  }

  bool defined() const { return static_cast<bool>(node_); }
  const Tensor<T>& value() const { return node_->value; }
  Tensor<T>& value() { return node_->value; }
  Tensor<T>& grad() { return node_->ensure_grad(); }
  bool has_grad() const { return node_->grad.defined(); }
  bool requires_grad() const { return node_ && node_->requires_grad; }
  void set_requires_grad(bool rg) { node_->requires_grad = rg; }

  std::shared_ptr<Node<T>> node() const { return node_; }

  // Shares the value, drops graph history and gradient tracking.
  Var detach() const {
    Var v;
    v.node_ = std::make_shared<Node<T>>();
    v.node_->value = node_->value;
    v.node_->requires_grad = false;
    return v;
  }

  void zero_grad() {
    if (node_ && node_->grad.defined()) node_->grad.fill(T(0));
  }

  // Reverse-mode sweep from this node; seeds d(self)/d(self) = 1.
  void backward() {
    if (node_->value.numel() != 1)
      throw_state("backward() requires a scalar loss");
    std::vector<Node<T>*> order;
    std::unordered_set<Node<T>*> seen;
    topo(node_.get(), seen, order);
    node_->ensure_grad().fill(T(1));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      Node<T>* n = *it;
      if (n->backward_fn && n->grad.defined()) n->backward_fn(*n);
    }
  }

  static Var from_node(std::shared_ptr<Node<T>> n) {
    Var v;
    v.node_ = std::move(n);
    return v;
  }

 private:
  static void topo(Node<T>* root, std::unordered_set<Node<T>*>& seen,
                   std::vector<Node<T>*>& order) {
    // Iterative DFS; graphs here can be a few thousand nodes deep.
    struct Frame {
      Node<T>* n;
      size_t child;
    };
    std::vector<Frame> stack{{root, 0}};
    seen.insert(root);
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.child < f.n->parents.size()) {
        Node<T>* p = f.n->parents[f.child++].get();
        if (p && !seen.count(p)) {
          seen.insert(p);
          stack.push_back({p, 0});
        }
      } else {
        order.push_back(f.n);
        stack.pop_back();
      }
    }
  }

  std::shared_ptr<Node<T>> node_;
};

// True when the op's result must be wired into the graph.
template <typename T>
inline bool track(const std::vector<Var<T>>& inputs) {
  if (!g_grad_enabled) return false;
  for (const auto& v : inputs)
    if (v.defined() && (v.requires_grad() || !v.node()->parents.empty() || v.node()->backward_fn))
      return true;
  return false;
}

template <typename T>
inline Var<T> make_result(Tensor<T> value, std::vector<Var<T>> inputs,
                          std::function<void(Node<T>&)> backward_fn) {
  auto n = std::make_shared<Node<T>>();
  n->value = std::move(value);
  if (track(inputs)) {
    n->requires_grad = true;
    for (auto& v : inputs) n->parents.push_back(v.node());
    n->backward_fn = std::move(backward_fn);
  }
  return Var<T>::from_node(std::move(n));
}

template <typename T>
inline void accumulate(Node<T>& parent, const Tensor<T>& g) {
  Tensor<T>& dst = parent.ensure_grad();
  const T* s = g.begin();
  for (T* d = dst.begin(); d != dst.end(); ++d, ++s) *d += *s;
}

}  // namespace sslchange::ag
