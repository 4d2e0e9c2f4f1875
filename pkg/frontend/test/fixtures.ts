/** A 64x64 synthetic scene (flat background + two textured blobs), PNG. */
export const SCENE_PNG_BASE64 =
  "iVBORw0KGgoAAAANSUhEUgAAAEAAAABACAIAAAAlC+aJAAAL20lEQVR4nG2avU8VTRTGZ3b3vggBtEAsTAixAGMh" +
  "iY2x0MQIWhkKjYlSWKl/gon/iIWFliZoQSKNhaUFiYWiBvmIhkJRNKCJysfuzFucu7/77Fy3IMt+zJw553mec87s" +
  "9ffu3dvf3y+KIsbovY8xZlkWQrCTGKNzzjnnvXfO2b8hhKIoQgg8bxe99yEEe917b3ftLfvXzpnCRtZZGA1j7C1u" +
  "2Vt6nsUYi6JwzlVVZXZXVeWcy/PcJmNipnTOlWXJdV6MMdpb/zQiWYaNk+c5NrFmO7cxuWvnNrKt2YYqcOp///1n" +
  "7/CCOd7ciV/NSp5R48wLPEwMdeUEDSvtRc7tXzOU68QNp9gzIYR2+PI8L8uyLEudWE20sJgPqqpiRGAAzLz39kB7" +
  "gvoWIbWAKzIBiU1BVO1fGz8xKdRHpgizOWzcLMuUEmqc3WJ0osHQdjGEUFWVPY/zABVoUTIQIl0SJnE3hGDY8963" +
  "39GJAQCMVEQpTBM027v6jJme4Aeg8goj8yJDmZUERMOV53me55242ECtVktZZSetVou5MdGiBF/LsiQm2Ie5Npox" +
  "RPmNrQoEZY5Np45gxrY9QFMxrQeYNqMhgx15ntsE5k4OtFWntLnQAEJBwBU/DEjw1VR0P9PJ2rSoJVb5npyDaQgN" +
  "T6LoGKbrepBdhZzmDRU0WG6MQqPKsmxPwZQkFO99URT/BCXeYmKcBDs1xIkuqSgDQoW1jobdTtKoTm0hKlAJXta5" +
  "iYO6x9aQ8B6IgwSsxztRtBwd01ecqA13OYfW6qC26UpzXB5FedRJhsVkhZhl18GrEgNYd1tvLAKrakA3CDU5tK/a" +
  "y/hSR2fKLOu8YqZooKPUTjFG8OpEMZIFa9gN0zzgm1WWFlrIgN0q4GLCVFYZmzlfw4rRIIS7pGGlRxJkRQvXLUNp" +
  "BLqR08Ckl6Sb0EhzagIYaKCc6Sa3cZf4sLyiKCwNOaGs/d3f3/d1xcXgyKOZDuA7acjXyghduI5WKM+Upt1eVKVS" +
  "6hNYK7rsSlKqqBiAZ0YjSsChSIBOucaSsEBBSb5Uu3neS9rGPtzPUOBEZSBrNiGWN9VTChbvfYYIqHcTZ3uRYRwP" +
  "UpUhUQQXfVPsuVozsJLMSPSclCSGN4qL0KzMvfdFQlA6DH2OW65OkE7ExKypqspm4q5VR9575SXr1NAlgHTNrKpe" +
  "S/xYVVXhnLO6Qh2Dt7iOEbZu4gafkg7OS7nRLU1kLkWLa2aebiLpsqlk07RvV2GJIluRABm8yLOTug0Y2AGQ1PGx" +
  "Totwhmg7USdlsKaptgyoWUTT5A+DsmaVj3tsekivqIvNPIWVaAapV1fCMnQxUZKgRtsUolC+ZtL2c90Jt2CIl1Yj" +
  "kw7YTjDFdYmMSpBOoYAhtkk8Vc07qVYr5yDt8z8Z5usaMKn/mEzLE9/seHxXFaiCloiYDp41C3gCCK8aHR2iqfDF" +
  "RM51rCCdp015+vTpsbGx2OyqkjhwxUm/oeNQdClFiR4NYMOLWjIo5dV5yk7FAGg+fvz44uLi9vb2mTNnRkZGnJSQ" +
  "XvIJNEtGgBi0fipQsbvVVOTxKGmcWxwgUnUJhnjv3759u7q6uri4+PPnz3fv3l25cqUTa5lIW1CmCCGY3VFqpyDd" +
  "AjgHhGmGU/aolSANLCbAi3VJbMG9c+fO+Pj44ODg+/fve3t7dfFqnK6f8RnZicjalTzPbVvJ1/Ld8Ypy0TXVlxXa" +
  "Cc2AKhjvVlV16dKlN2/ezM/PX7169ePHj9PT07FOiHCJUlTjkLg5z3P2yHxXpmunxQTKIC9BJ9WbqrIqI9NcvHhx" +
  "YWHhx48fRVGsra3t7Oy8fv0aLbI6VDfnYrNGxPG2TnChaVHJk6mhFKFoImNR/WpygI467tDQUH9//9bW1tDQ0Pr6" +
  "+vT09Nra2smTJ71kAMN6aPZGuCaRVO/9xMQE5wmAO0snU+hybZogHUKy/6NMsLeePXvW29s7MzOzsrJy4sSJL1++" +
  "TE1NLSwsOMmjinVUxWrBJDK7u7u7u7vPnz/f2dmxXicR5U52UIngdqIVqFZSIJlHKUsPHTpUluXNmzerqlpbW3v8" +
  "+HFfX5/SHanQqo4gYMbBgwezLBsZGZmYmGi1Wjdu3Dh69CjbSp3UqaPALWIN4DSIUaoPM6soCkNgnufr6+vOuUeP" +
  "Hi0tLZ07d66/v//8+fOE0dWdSmhuVEJFm/TIkSODg4NbW1u/fv1aWVmZmZlZWlo6duyYQs45l9mniiipjnOibFKQ" +
  "bDAmpRgMsWeePHlSFMWFCxf+/v3barWePn2KQqgs6utsxdmqBgcHvfejo6NVVU1OTn779i3P85cvX9pddikLBvL1" +
  "hl6M0bZ4iabu+NpKtON2ot9BGpeiKJ48eTI8PLy3tzcwMBDrHQdf53WKStZDTK5fv/7w4UMjxtTU1J8/f+bm5rIs" +
  "K8vy4MGDTvqqIimSdKeAI2Ft1mxnff25IdaZRPP/169fwXSyWp1XnwkhLC8vj46Obm5ubmxsvHjxYnNz8/Lly58+" +
  "ffr+/fvOzg7OcvaNTPEXJUurOEJfvetl0w9wJ5VmQ7Nr9jvZX9LZcdDa2trnz597enr6+vp+//49Pj7+4cOHsbGx" +
  "vb09cnNbzcCfFt9Jg4KShrppxhTgqK+jJwmdguwmecn6XloRe35jY+PatWtTU1OnTp1yzk1OTh4+fLinp0cjZkYW" +
  "KuRKytjsGwGoq9uaxHNJTZ9gBomLzUSucVa4bm9vz8/PDw8PHzhwwHt///79Vqu1vLys0DVHF6Hu5UkoCcoV/VGS" +
  "RpAuLOvqKnnRN79z4mO1Q3O8PXPr1q0Y46tXrxYXF2/fvl2W5ezsrBbSmnz//YmKuVEbu2vpsPvTnYaL6HUHAdOx" +
  "I6mWbbS5ubmBgYHV1dWzZ88+ePBgdnaWqKo8Zlnm7969y/sKoay5MxNk0wURxN84FR/jWicKo7DhFS/5UcOCmiWq" +
  "DetwRJbMx+cnhYTh3pahG1iuFi6lpnoEmxR+ai7XdZ1OKmLdkqI+wLB285bAQCtn/TKVyU4WrrJQKK11F0jNxZdq" +
  "qNqaYIFnTDHtX6tZgrTOnQ+Vyi01rhsAdvCFjzgwqG6s4zyNmzoV1DG1eS2KOvt6o5eavw0h6wOxGEP1twVEgx07" +
  "GNIZSL7jwlE1lyW55gcebEVkCEWsC7Akqhxe+3rKgYRJqI12M/gMYqgXFDZOpBnv7O/vs0dGd6bdSJQ2EhSp+zoh" +
  "cjVBtR+Ax076G9UvgAFrnSTgINszxEfzFwkRH2fNfWKWBLRUbUPdl2cAIIFyWZbdfFfZ0VAQX42bIhi4e9lUjdLW" +
  "4DhOtFzTkVWL2giHOjqEa34HSPyHlfz1ddXNmiGPIdCJ3ttjwF1//tItFb7+AguJuWVTtD90syBsYufMSSvsm98z" +
  "lVusEEyrEQiob25UOcmeGjRe1+jxgK4/s18VuHq3zDdzUCb7oSxaIwPbyAZBtsOww0hlq8262gkMJSa8CJZUhYBJ" +
  "hn14Xd3Jin3dwuIGUolZhhcT/XFSibj6mwB1FDKqPlYmdIBef0xIABZj7GQx31UwIibqeAohSOnrvKMUSryLTSYP" +
  "PBObqYrPavqMlx+YKeo6EVDB0ZYyQWeim2orCu2kLgBO+k2SW07EKsrvf4Ls3XYnR/sXgamqqlF+JrlMMYBX+ArN" +
  "w+o5J+Kt6+lAVpCjWIUeCsIgPZ3v+vTdtorhNEAKQVxoZtFAwpAgPwthYcif/pYOc9UXRFXxzfoTS7C74xS7key2" +
  "JqsM9U8h1W1g2kmuwGLXVCSVJl1GVnd2VpIpaF3zCLILhqOrqioUZ64r5xE7KOskG+iIUY5Ey13XFnSQdtRGsB6D" +
  "FKEVvjkiKfJi/RWm0Kuh/lE0DsYItV4fU+FiH1vpzn4HcQBgCbPZt+sQVJaq0WjEQS+ZWayVuHs5ouQgq5qQHefc" +
  "/v6+piFzZFVVFO2QB8YTFlym+FE51n8ZJP0VsK+7HoJrd1EJRYsTpYtSGiQTk6Sz+jMeaZGVKE5cnfIUHdADg22c" +
  "QhGvbtMlqZYnLqGydbLx1g1ZJ2KifVwykXpT92mUdbDIHvgfptPI8lGfnXYAAAAASUVORK5CYII=";

export function scenePngBytes(): Uint8Array {
  const binary = atob(SCENE_PNG_BASE64);
  const bytes = new Uint8Array(binary.length);
  for (let i = 0; i < binary.length; i++) bytes[i] = binary.charCodeAt(i);
  return bytes;
}
