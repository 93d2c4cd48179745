# Generated by tools/gen_erfcx_table.py; do not edit.
# Chebyshev coefficients of erfcx on [0.5*i, 0.5*(i+1)), degree 15.
WIDTH = 0.5
XMAX = 12.0
COEFFS = (
    (0.7889742043298319, -0.19054959076559183, 0.018748766414046564, -0.0015967385395194618, 0.00012165370853879293, -8.465560707954155e-06, 5.457634580553603e-07, -3.293608532171683e-08, 1.8753468988852802e-09, -1.0137357663517625e-10, 5.228450565255384e-12, -2.5835414602093115e-13, 1.2273025246260158e-14, -5.621557863963346e-16, 2.4890117636300416e-17, -1.0658308432020766e-18),
    (0.5142540300448141, -0.09353436157631646, 0.007349543567965961, -0.0005170287683170955, 3.327489181039832e-05, -1.9877609419315706e-06, 1.1137198399251981e-07, -5.898649609389129e-09, 2.9712990142852805e-10, -1.430488185776257e-11, 6.608616284265576e-13, -2.939555289997837e-14, 1.2625028540336645e-15, -5.2483534858603674e-17, 2.116281534737731e-18, -8.280881761800545e-20),
    (0.3711927943420716, -0.052799551940465685, 0.00338076236159189, -0.00019896338415156294, 1.0911979120987141e-05, -5.632372066195936e-07, 2.7564656102315984e-08, -1.2864435796900215e-09, 5.75189434369204e-11, -2.473180238194912e-12, 1.0258794609509988e-13, -4.116181633727295e-15, 1.6012087659239977e-16, -6.050937818600348e-18, 2.225241880186757e-19, -7.966447864848393e-21),
    (0.28672723893640484, -0.03300680108481147, 0.0017591477886840761, -8.788195718624664e-05, 4.1516102756112e-06, -1.86697213290856e-07, 8.033784461538863e-09, -3.321836144278999e-10, 1.3243525744778221e-11, -5.105578892334744e-13, 1.9079334307984007e-14, -6.92582075972267e-16, 2.446601830999504e-17, -8.424357994177433e-19, 2.831449923171198e-20, -9.291630105608957e-22),
    (0.23209235631383532, -0.02225125762219511, 0.0010068780404189428, -4.3327905521453394e-05, 1.783140732436e-06, -7.049777846240933e-08, 2.687293297212188e-09, -9.906296971849274e-11, 3.5405028248059043e-12, -1.2294649407955319e-13, 4.1560224390309084e-15, -1.369809777117835e-16, 4.408482868320317e-18, -1.3871407872142258e-19, 4.272198282138824e-21, -1.2881211931746544e-22),
    (0.1942820812745081, -0.01587924788333761, 0.0006208296616878289, -2.3328859409806277e-05, 8.456745835133116e-07, -2.9663701263111685e-08, 1.0094101754255728e-09, -3.3394274912569374e-11, 1.0760912211208994e-12, -3.383019820369886e-14, 1.039102577686144e-15, -3.1221953414400616e-17, 9.187550752851572e-19, -2.650439093842663e-20, 7.502601983905378e-22, -2.0841310730270026e-23),
    (0.16674094078984744, -0.011840246176534596, 0.00040602706605389184, -1.3487936862426611e-05, 4.351207693856568e-07, -1.3660344480880951e-08, 4.1810593877867705e-10, -1.249586682885637e-11, 3.651747963420464e-13, -1.0447676413633131e-14, 2.929516020050166e-16, -8.058488951045153e-18, 2.1765870687729814e-19, -5.7771136149271035e-21, 1.5079091270955863e-22, -3.870669059513014e-24),
    (0.1458678994299681, -0.00913882677497607, 0.00027841748283800253, -8.265426896062553e-06, 2.395159038287142e-07, -6.7849288502505444e-09, 1.8813155805500703e-10, -5.111902689715732e-12, 1.3625532798777336e-13, -3.565943642783521e-15, 9.170794861729046e-17, -2.319419395185258e-18, 5.772859034402819e-20, -1.4148699167353048e-21, 3.416712272347383e-23, -8.129500963298622e-25),
    (0.12954356337104844, -0.007252008538070823, 0.00019842799089758552, -5.314543128605463e-06, 1.3949661602942341e-07, -3.5921517910557204e-09, 9.083412947957149e-11, -2.257438456574558e-12, 5.518097473889793e-14, -1.3276187111651642e-15, 3.1459058272004995e-17, -7.346177090621902e-19, 1.69143488693249e-20, -3.8418866045674784e-22, 8.61252442766471e-24, -1.9054409049612292e-25),
    (0.11644862890185619, -0.005886523975409107, 0.00014600685001708562, -3.5572859973196615e-06, 8.520497098445507e-08, -2.0079145745150486e-09, 4.6586759822602136e-11, -1.0648612197385209e-12, 2.3993293686522612e-14, -5.331948265574326e-16, 1.1692197734747851e-17, -2.531160414774834e-19, 5.4117970044406405e-21, -1.1432310878423617e-22, 2.38703191527203e-24, -4.9259040979750724e-26),
    (0.10572302757182546, -0.00486874519094724, 0.00011034627352539351, -2.463299464514563e-06, 5.419575127608463e-08, -1.1758409091959346e-09, 2.5170629266991306e-11, -5.318768726909123e-13, 1.1099246066647877e-14, -2.288343345428706e-16, 4.662961935750686e-18, -9.394465620762565e-20, 1.8719678131638574e-21, -3.690441044448539e-23, 7.20014122120299e-25, -1.3901166922574147e-26),
    (0.09678404994203446, -0.004091068675234786, 8.530745092375908e-05, -1.7559071451796982e-06, 3.5692826444047505e-08, -7.168210431368562e-10, 1.4228639182317014e-11, -2.7925400263790395e-13, 5.420868594879747e-15, -1.0411474753566211e-16, 1.9790708575635824e-18, -3.7242612840603757e-20, 6.940096111427729e-22, -1.2809957373675962e-23, 2.342561662910293e-25, -4.2438064413960426e-27),
    (0.08922385114369112, -0.0034841650905848543, 6.724357435355513e-05, -1.2833045357905717e-06, 2.4226301535981738e-08, -4.5254800134387044e-10, 8.367488078475277e-12, -1.5318038945980186e-13, 2.777193951246827e-15, -4.9878673353564825e-17, 8.87633673601134e-19, -1.565531390135919e-20, 2.737112909025728e-22, -4.7447748104915724e-24, 8.156710946458865e-26, -1.3904279423359199e-27),
    (0.08274894261425592, -0.0030018491163123218, 5.390271589062477e-05, -9.584768728617825e-07, 1.6881781008093557e-08, -2.9459829030235714e-10, 5.094728865445698e-12, -8.733508729943545e-14, 1.4843148696391077e-15, -2.5016176397513543e-17, 4.1817403781845253e-19, -6.934481922042249e-21, 1.1409526193371366e-22, -1.8629026576819247e-24, 3.0189139317063174e-26, -4.855181250235228e-28),
    (0.07714301498457725, -0.0026124508309813286, 4.384666917854146e-05, -7.2960507324944e-07, 1.2039059276311144e-08, -1.9703200354336082e-10, 3.1989116262686752e-12, -5.153077955349139e-14, 8.237667328032955e-16, -1.3070298177335428e-17, 2.058628165128286e-19, -3.2191853899618175e-21, 4.998635337996424e-23, -7.708208452295067e-25, 1.1806160121561865e-26, -1.7958622406483364e-28),
    (0.07224329146025112, -0.0022936985200822757, 3.612940654025026e-05, -5.647759064123e-07, 8.76302268797052e-09, -1.3497783297778588e-10, 2.0642720605714826e-12, -3.1349437387036504e-14, 4.728360669089612e-16, -7.083806140512586e-18, 1.0542723708395042e-19, -1.5589124895439223e-21, 2.290466845448136e-23, -3.3443237772192257e-25, 4.8531251061158045e-27, -6.998741084562408e-29),
    (0.06792502562085186, -0.0020295780133343135, 3.0112232489946656e-05, -4.4374262789425e-07, 6.495723461938702e-09, -9.446847414863316e-11, 1.3650918121194352e-12, -1.9602114251804314e-14, 2.797426013648622e-16, -3.968036347135062e-18, 5.594985655963437e-20, -7.842814475968666e-22, 1.0930406468457876e-23, -1.5147201538172144e-25, 2.0873685297494727e-27, -2.860183450906648e-29),
    (0.0640910645158412, -0.0018083458477983637, 2.5353857875874806e-05, -3.5331589280670027e-07, 4.894237448769631e-09, -6.739909783567687e-11, 9.228117739095183e-13, -1.256329147014292e-14, 1.700845328955084e-16, -2.2900012494676344e-18, 3.0665726470224624e-20, -4.0846356940227288e-22, 5.4121602661190705e-24, -7.134093892211147e-26, 9.356003472113469e-28, -1.2206299247399641e-29),
    (0.06066465442603605, -0.001621238095631739, 2.1543026376465587e-05, -2.8469803906319674e-07, 3.742120312713639e-09, -4.892635928275246e-11, 6.363486054740469e-13, -8.233952208422035e-15, 1.0600236288501131e-16, -1.3578399379053303e-18, 1.7307658460277918e-20, -2.195405232454708e-22, 2.7714480912801193e-24, -3.482111351331438e-26, 4.354614971204733e-28, -5.41986265075408e-30),
    (0.05758437655705678, -0.0014616108737279514, 1.8456091242093878e-05, -2.318945590787793e-07, 2.8994475006185987e-09, -3.607811438615092e-11, 4.467920310593378e-13, -5.50716708154197e-15, 6.756779431618888e-17, -8.252138328538818e-19, 1.0033082366231152e-20, -1.2144188602349633e-22, 1.4635019582577125e-24, -1.7560325312849766e-26, 2.0980187770247606e-28, -2.4956609384071307e-30),
    (0.054800514325293315, -0.0013243557300000096, 1.5929645800518835e-05, -1.9074163936519398e-07, 2.2737805817156285e-09, -2.6986107068062964e-11, 3.188929094906637e-13, -3.752200618148466e-15, 4.396294609895859e-17, -5.129434021342622e-19, 5.9601311207215956e-21, -6.897109271808905e-23, 7.949210605570013e-25, -9.125289713807139e-27, 1.043409366973974e-28, -1.1882606439974595e-30),
    (0.052272402975184415, -0.0012054941776300544, 1.3842474073317438e-05, -1.5829615518193543e-07, 1.8028374733794036e-09, -2.0449999638505995e-11, 2.310473373326395e-13, -2.6001563714119552e-15, 2.914796271648319e-17, -3.254963399347352e-19, 3.62102602403458e-21, -4.0131264080876525e-23, 4.43115854131562e-25, -4.874748135758077e-27, 5.343235370521474e-29, -5.834972752152079e-31),
    (0.049966465974773486, -0.0011018914709116845, 1.210340819828991e-05, -1.3244445654476445e-07, 1.4438938414301692e-09, -1.5683024028939575e-11, 1.697206516359335e-13, -1.830066124056146e-15, 1.966267328486037e-17, -2.105126215325691e-19, 2.2458940033543284e-21, -2.3877634798852694e-23, 2.5298766500117533e-25, -2.6713334986927983e-27, 2.8112017038284e-29, -2.948206210736829e-31),
    (0.047854739778231965, -0.0010110512820327676, 1.0643009924205083e-05, -1.1164635022243863e-07, 1.1671555726029718e-09, -1.215996019566652e-11, 1.2626106579363407e-13, -1.3066372272422061e-15, 1.3477302062556257e-17, -1.3855654246909584e-19, 1.4198443847207964e-21, -1.4502982111929226e-23, 1.4766911576294947e-25, -1.4988236049816443e-27, 1.5165344860149656e-29, -1.5295489899467568e-31),
)
