#pragma once

#include <unordered_set>
#include <utility>
#include <vector>

namespace mdpwave {

template <typename F>
void for_each_node(const Expr& root, F&& visit) {
  std::unordered_set<const Node*> seen;
  // Explicit stack: derivative DAGs can be deep.
  std::vector<std::pair<Expr, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [e, expanded] = stack.back();
    stack.pop_back();
    if (seen.count(e.id())) continue;
    if (expanded) {
      seen.insert(e.id());
      visit(e);
      continue;
    }
    stack.emplace_back(e, true);
    const Node& n = e.node();
    switch (n.kind) {
      case Kind::add:
      case Kind::sub:
      case Kind::mul:
      case Kind::div:
        stack.emplace_back(n.rhs, false);
        stack.emplace_back(n.lhs, false);
        break;
      case Kind::neg:
      case Kind::pow:
      case Kind::func:
        stack.emplace_back(n.lhs, false);
        break;
      default:
        break;
    }
  }
}

}  // namespace mdpwave
