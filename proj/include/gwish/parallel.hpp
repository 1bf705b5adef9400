#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

namespace gwish {

/// How an index-parallel kernel is executed. `Serial` is the reference path
/// kept for testing; both produce bit-identical results because every sample
/// derives its own RngStream from its index and reductions run in index order.
enum class Exec { Serial, Parallel };

/// Worker count for `Exec::Parallel` (0 leaves the OpenMP default).
void set_threads(int threads);
int max_threads();

namespace detail {
void parallel_for(std::size_t count, void (*body)(void*, std::size_t), void* ctx);
}

/// out[i] = f(i) for i in [0, count).
template <class F>
auto map_indexed(std::size_t count, F&& f, Exec exec = Exec::Parallel)
    -> std::vector<std::decay_t<std::invoke_result_t<F&, std::size_t>>> {
  using R = std::decay_t<std::invoke_result_t<F&, std::size_t>>;
  std::vector<R> out(count);
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  struct Ctx {
    std::remove_reference_t<F>* f;
    std::vector<R>* out;
  } ctx{&f, &out};
  detail::parallel_for(
      count,
      [](void* p, std::size_t i) {
        auto* c = static_cast<Ctx*>(p);
        (*c->out)[i] = (*c->f)(i);
      },
      &ctx);
  return out;
}

}  // namespace gwish
