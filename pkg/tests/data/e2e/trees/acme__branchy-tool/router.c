#include <stdio.h>

int route(int kind, int flags) {
    if (kind == 0) {
        return flags & 1 ? 10 : 11;
    }
    switch (kind) {
    case 1:
        return flags && 1;
    case 2:
        if (flags > 2 && flags < 8) {
            return 20;
        }
        return 21;
    case 3:
        while (flags > 0) {
            flags >>= 1;
        }
        return 30;
    }
    return -1;
}

int dispatch(int kind) {
    for (int i = 0; i < kind; i++) {
        if (i % 2 == 0 || kind % 3 == 0) {
            printf("%d\n", i);
        }
    }
    return kind;
}
