#define MAX(a, b) ((a) > (b) ? (a) : (b))
#define UNUSED(x) (void)(x)

int biggest(int a, int b, int c) {
    int ab = MAX(a, b);
    return MAX(ab, c);
}
