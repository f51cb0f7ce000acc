/* montmul_sse4x32m_float_shuffle_cast: Montgomery multiplication modulo P = 2013265921 (0x78000001), R = 2^31
 * P' = 0x77FFFFFF, isa sse4x32m, gather float-shuffle-cast
 * inputs and outputs are in Montgomery form; generated by modvec, do not edit */
#include <stdint.h>
#include <stddef.h>
#include <smmintrin.h>

void montmul_sse4x32m_float_shuffle_cast(const int32_t* a, const int32_t* b, int32_t* out, size_t n4)
{
    __m128i v_a;
    __m128i v_b;
    __m128i v_res;
    __m128i t0;
    __m128i t1;
    __m128i t2;
    __m128i t3;
    __m128i t4;
    __m128i t5;
    __m128i t6;
    __m128i t7;
    __m128i t8;
    __m128i t9;
    __m128i t10;
    __m128i t11;
    __m128i t12;
    __m128i t13;
    __m128i t14;
    __m128i t15;
    __m128i t16;
    __m128i t17;
    __m128i t18;
    __m128i t19;
    __m128i t20;
    __m128i t21;
    __m128i t22;
    __m128i t23;
    __m128i t24;
    __m128i t25;
    __m128i t26;
    __m128i t27;
    __m128i t28;
    __m128i t29;
    size_t i;
    t0 = _mm_set1_epi32((int32_t)0x78000001u);
    t1 = _mm_set1_epi32((int32_t)0x77FFFFFFu);
    t2 = _mm_set1_epi32((int32_t)0x7FFFFFFFu);
    t3 = _mm_set1_epi32((int32_t)0x80000000u);
    t4 = _mm_set1_epi32((int32_t)0xF8000000u);
    for (i = 0; i < n4; i++) {
        v_a = _mm_load_si128((const __m128i *)(a + 4 * i));
        v_b = _mm_load_si128((const __m128i *)(b + 4 * i));
        t5 = _mm_srli_si128(v_a, 4);
        t6 = _mm_srli_si128(v_b, 4);
        t7 = _mm_mul_epu32(v_a, v_b);
        t8 = _mm_mul_epu32(t5, t6);
        t9 = _mm_castps_si128(_mm_shuffle_ps(_mm_castsi128_ps(t7), _mm_castsi128_ps(t8), 0x88));
        t10 = _mm_castps_si128(_mm_shuffle_ps(_mm_castsi128_ps(t7), _mm_castsi128_ps(t8), 0xDD));
        t11 = _mm_shuffle_epi32(t10, 0xD8);
        t12 = _mm_shuffle_epi32(t9, 0xD8);
        t13 = _mm_mullo_epi32(t12, t1);
        t14 = _mm_and_si128(t13, t2);
        t15 = _mm_srli_si128(t14, 4);
        t16 = _mm_mul_epu32(t14, t0);
        t17 = _mm_mul_epu32(t15, t0);
        t18 = _mm_add_epi64(t7, t16);
        t19 = _mm_add_epi64(t8, t17);
        t20 = _mm_castps_si128(_mm_shuffle_ps(_mm_castsi128_ps(t18), _mm_castsi128_ps(t19), 0x88));
        t21 = _mm_castps_si128(_mm_shuffle_ps(_mm_castsi128_ps(t18), _mm_castsi128_ps(t19), 0xDD));
        t22 = _mm_shuffle_epi32(t21, 0xD8);
        t23 = _mm_shuffle_epi32(t20, 0xD8);
        t24 = _mm_slli_epi64(t22, 1);
        t25 = _mm_srli_epi64(t23, 31);
        t26 = _mm_add_epi32(t24, t25);
        t27 = _mm_sub_epi32(t26, t3);
        t28 = _mm_cmpgt_epi32(t27, t4);
        t29 = _mm_and_si128(t28, t0);
        v_res = _mm_sub_epi32(t26, t29);
        _mm_store_si128((__m128i *)(out + 4 * i), v_res);
    }
}
