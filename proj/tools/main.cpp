#include <cstdio>

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::printf("kscert: command line interface under construction\n");
  return 0;
}
