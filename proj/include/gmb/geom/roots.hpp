#pragma once

#include <utility>
#include <variant>

#include "gmb/geom/primitives.hpp"

namespace gmb::geom {

// Root selectors. Each picks one of the two intersection branches; the choice
// is re-made on every evaluation from current values, and ties go to "+".

struct ArbitraryRoot {};

template <typename S>
struct NeqRoot {
  Vec2<S> point;
};

template <typename S>
struct OppSidesRoot {
  Vec2<S> point;
  Line<S> line;
};

template <typename S>
struct SameSideRoot {
  Vec2<S> point;
  Line<S> line;
};

template <typename S>
struct CloserToPointRoot {
  Vec2<S> point;
};

template <typename S>
struct CloserToLineRoot {
  Line<S> line;
};

template <typename S>
using RootSelector = std::variant<ArbitraryRoot, NeqRoot<S>, OppSidesRoot<S>, SameSideRoot<S>,
                                  CloserToPointRoot<S>, CloserToLineRoot<S>>;

// Nonnegative when the "+" branch should be taken.
template <typename S>
S root_preference(const std::pair<Vec2<S>, Vec2<S>>& roots, const RootSelector<S>& selector) {
  const auto& [plus, minus] = roots;
  return std::visit(
      [&](const auto& sel) -> S {
        using T = std::decay_t<decltype(sel)>;
        if constexpr (std::is_same_v<T, ArbitraryRoot>) {
          return S(0.0);
        } else if constexpr (std::is_same_v<T, NeqRoot<S>>) {
          return squared_norm(plus - sel.point) - squared_norm(minus - sel.point);
        } else if constexpr (std::is_same_v<T, CloserToPointRoot<S>>) {
          return squared_norm(minus - sel.point) - squared_norm(plus - sel.point);
        } else if constexpr (std::is_same_v<T, CloserToLineRoot<S>>) {
          return abs(signed_distance(minus, sel.line)) - abs(signed_distance(plus, sel.line));
        } else if constexpr (std::is_same_v<T, OppSidesRoot<S>>) {
          const S ref = signed_distance(sel.point, sel.line);
          return (signed_distance(minus, sel.line) - signed_distance(plus, sel.line)) * ref;
        } else {
          const S ref = signed_distance(sel.point, sel.line);
          return (signed_distance(plus, sel.line) - signed_distance(minus, sel.line)) * ref;
        }
      },
      selector);
}

template <typename S>
Vec2<S> select_root(const std::pair<Vec2<S>, Vec2<S>>& roots, const RootSelector<S>& selector) {
  if (std::holds_alternative<ArbitraryRoot>(selector)) return roots.first;
  return select(root_preference(roots, selector), roots.first, roots.second);
}

}  // namespace gmb::geom
