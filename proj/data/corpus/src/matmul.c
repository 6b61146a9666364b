#define N 8

void matmul(const int a[N][N], const int b[N][N], int out[N][N]) {
  for (int i = 0; i < N; i++) {
    for (int j = 0; j < N; j++) {
      int acc = 0;
      for (int k = 0; k < N; k++) {
        acc += a[i][k] * b[k][j];
      }
      out[i][j] = acc;
    }
  }
}

int trace(const int m[N][N]) {
  int t = 0;
  for (int i = 0; i < N; i++) t += m[i][i];
  return t;
}
