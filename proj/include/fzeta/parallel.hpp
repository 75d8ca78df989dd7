#pragma once

namespace fzeta {

// Serial runs the reference loops kept for testing; Parallel runs the OpenMP
// kernels. Kernel output never depends on the worker count.
enum class Exec { Serial, Parallel };

void set_worker_count(int workers);
int worker_count();

}  // namespace fzeta
