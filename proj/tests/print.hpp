/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <ostream>

#include "pts/syntax/printer.hpp"

namespace pts {

// Lets gtest show formulas in failure messages.
template <class Node> void PrintTo(const Tree<Node> &t, std::ostream *os) { *os << to_string(t); }

} // namespace pts
