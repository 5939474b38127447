#pragma once

namespace cmvf {

/// Selects the OpenMP kernel or its serial reference.
enum class Execution { serial, parallel };

} // namespace cmvf
