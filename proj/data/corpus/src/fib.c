static int memo[64];

int fib(int n) {
  if (n < 2) return n;
  if (n < 64 && memo[n] != 0) return memo[n];
  int value = fib(n - 1) + fib(n - 2);
  if (n < 64) memo[n] = value;
  return value;
}

int fib_sum(int k) {
  int total = 0;
  for (int i = 0; i < k; i++) total += fib(i);
  return total;
}
