#include <cstdio>

int main() {
  std::puts("biconserv cli placeholder");
  return 0;
}
