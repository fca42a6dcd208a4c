// Acceptance suite: one pass/fail line per criterion.
#include <cstdio>
#include <string>
#include <vector>

int main(int, char**) {
  std::printf("acceptance suite placeholder\n");
  return 1;
}
