// SPDX-License-Identifier: Apache-2.0

#include <cstdio>

int main() {
  std::puts("virtfusion: CLI under construction");
  return 0;
}
