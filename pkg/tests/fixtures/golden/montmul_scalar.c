/* montmul_scalar: Montgomery multiplication modulo P = 2013265921 (0x78000001), R = 2^31
 * P' = 0x77FFFFFF, scalar
 * inputs and outputs are in Montgomery form; generated by modvec, do not edit */
#include <stdint.h>
#include <stddef.h>

void montmul_scalar(const int32_t* a, const int32_t* b, int32_t* out, size_t n4)
{
    uint32_t v_a;
    uint32_t v_b;
    uint32_t v_res;
    uint64_t t0;
    uint64_t t1;
    uint64_t t2;
    uint32_t t3;
    uint32_t t4;
    uint32_t t5;
    uint32_t t6;
    uint64_t t7;
    uint64_t t8;
    uint64_t t9;
    uint64_t t10;
    uint32_t t11;
    uint32_t t12;
    uint32_t t13;
    size_t i;
    for (i = 0; i < 4 * n4; i++) {
        v_a = (uint32_t)a[i];
        v_b = (uint32_t)b[i];
        t0 = (uint64_t)(v_a);
        t1 = (uint64_t)(v_b);
        t2 = (uint64_t)(t0 * t1);
        t3 = (uint32_t)(t2);
        t4 = (uint32_t)(t3 & 0x7FFFFFFFu);
        t5 = (uint32_t)(t4 * 0x77FFFFFFu);
        t6 = (uint32_t)(t5 & 0x7FFFFFFFu);
        t7 = (uint64_t)(t6);
        t8 = (uint64_t)(t7 * 0x78000001ull);
        t9 = (uint64_t)(t2 + t8);
        t10 = (uint64_t)(t9 >> 31);
        t11 = (uint32_t)(t10);
        t12 = (uint32_t)-(uint32_t)(t11 >= 0x78000001u);
        t13 = (uint32_t)(t12 & 0x78000001u);
        v_res = (uint32_t)(t11 - t13);
        out[i] = (int32_t)v_res;
    }
}
